//! Chow–Künneth projectors of `S`, `S^m` and `S^(μ)` for a K3 surface,
//! together with the checks that the decomposition is multiplicative.
//!
//! For the surface `π^0 = o × S`, `π^4 = S × o` and `π^2 = Δ - π^0 - π^4`;
//! on `S^m`, `π^i` is the sum of `π^{i_1} ⊗ ... ⊗ π^{i_m}` over
//! `i_1 + ... + i_m = i`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::cohom::{evaluate, graded_traces, CohomModel};
use crate::corr::Correspondence;
use crate::error::{Error, Result};
use crate::hilb::SetPartition;
use crate::rational::{q, Q};
use crate::report::{Budget, BudgetClock, CheckReport, Status};
use crate::ring::{Normalizer, TautExpr};
use crate::surface::{Mode, SurfaceModel};

const SURFACE_INDICES: [usize; 3] = [0, 2, 4];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectorFamily {
    arity: usize,
    projectors: BTreeMap<usize, Correspondence>,
    group: Option<Vec<Vec<usize>>>,
}

impl ProjectorFamily {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn projector(&self, i: usize) -> Option<&Correspondence> {
        self.projectors.get(&i)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.projectors.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Correspondence)> {
        self.projectors.iter().map(|(&i, c)| (i, c))
    }

    /// Generators of the symmetry group the family is invariant under.
    pub fn group(&self) -> Option<&[Vec<usize>]> {
        self.group.as_deref()
    }
}

fn require_k3(model: &SurfaceModel) -> Result<()> {
    if model.mode() != Mode::K3 {
        return Err(Error::WrongMode(
            "Chow-level projectors are only available for K3 surfaces",
        ));
    }
    Ok(())
}

pub fn surface_projectors(model: &SurfaceModel) -> Result<ProjectorFamily> {
    require_k3(model)?;
    let p0 = TautExpr::point(2, 1)?;
    let p4 = TautExpr::point(2, 2)?;
    let p2 = TautExpr::diagonal(2, 1, 2)?.sub(&p0)?.sub(&p4)?;
    let projectors = [(0, p0), (2, p2), (4, p4)]
        .into_iter()
        .map(|(i, class)| Ok((i, Correspondence::new(1, 1, class)?)))
        .collect::<Result<_>>()?;
    Ok(ProjectorFamily {
        arity: 1,
        projectors,
        group: None,
    })
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for &a in &SURFACE_INDICES {
        if a > total {
            continue;
        }
        for mut rest in compositions(total - a, parts - 1) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

pub fn power_projectors(m: usize, model: &SurfaceModel) -> Result<ProjectorFamily> {
    power_projectors_within(m, model, &Budget::unlimited().start())
}

pub fn power_projectors_within(
    m: usize,
    model: &SurfaceModel,
    clock: &BudgetClock,
) -> Result<ProjectorFamily> {
    if m == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let surface = surface_projectors(model)?;
    let mut normalizer = Normalizer::new(model);
    let mut projectors = BTreeMap::new();
    for i in (0..=4 * m).step_by(2) {
        let mut class = TautExpr::zero(2 * m);
        for comp in compositions(i, m) {
            let factors: Vec<Correspondence> = comp
                .iter()
                .map(|a| surface.projectors[a].clone())
                .collect();
            class = class.add(Correspondence::tensor(&factors)?.class())?;
            clock.check(class.len())?;
        }
        let class = normalizer.normalize(&class);
        projectors.insert(i, Correspondence::new(m, m, class)?);
    }
    Ok(ProjectorFamily {
        arity: m,
        projectors,
        group: None,
    })
}

/// The permutation of `S^m × S^m` acting by `g` on both blocks.
fn doubled(g: &[usize]) -> Vec<usize> {
    let m = g.len();
    g.iter().copied().chain(g.iter().map(|&r| r + m)).collect()
}

/// Projectors of `S^l` for `l = l(μ)`, checked to be invariant under `S_μ`.
pub fn symmetric_projectors(mu: &SetPartition, model: &SurfaceModel) -> Result<ProjectorFamily> {
    let mut family = power_projectors(mu.len(), model)?;
    let gens = mu.block_symmetry_generators();
    for g in &gens {
        let perm = doubled(g);
        for (i, p) in &family.projectors {
            let moved = p.class().apply_permutation(&perm)?.normalize(model);
            if &moved != p.class() {
                return Err(Error::InvalidArgument(format!(
                    "projector π^{i} is not invariant under the block permutation {g:?}"
                )));
            }
        }
    }
    family.group = Some(gens);
    Ok(family)
}

fn witness_or_none(x: &TautExpr) -> Option<String> {
    (!x.is_zero()).then(|| x.to_string())
}

/// Composition, completeness and self-duality identities, exactly in the
/// ring. Composition instances `π^i ∘ π^j` are checked for `i <= j`;
/// `j ∘ i` follows by transposing once self-duality holds.
pub fn verify_ck_axioms(
    family: &ProjectorFamily,
    model: &SurfaceModel,
    clock: &BudgetClock,
    report: &mut CheckReport,
) -> Result<()> {
    let m = family.arity;
    let pairs: Vec<(usize, usize)> = family
        .indices()
        .flat_map(|i| family.indices().filter(move |&j| i <= j).map(move |j| (i, j)))
        .collect();
    let results: Vec<Result<(String, Option<String>, f64)>> = pairs
        .par_iter()
        .map_init(
            || Normalizer::new(model),
            |n, &(i, j)| {
                let start = Instant::now();
                clock.check(0)?;
                let (pi, pj) = (&family.projectors[&i], &family.projectors[&j]);
                let c = pi.compose_with(pj, n)?;
                let expected = if i == j { pi.class().clone() } else { TautExpr::zero(2 * m) };
                let diff = c.class().sub(&expected)?;
                let id = if i == j {
                    format!("idempotent pi^{i}")
                } else {
                    format!("orthogonal pi^{i} pi^{j}")
                };
                Ok((id, witness_or_none(&diff), start.elapsed().as_secs_f64()))
            },
        )
        .collect();
    for r in results {
        let (id, witness, secs) = r?;
        let status = if witness.is_none() { Status::Pass } else { Status::Fail };
        report.push(id, status, witness, Duration::from_secs_f64(secs));
    }

    let start = Instant::now();
    let mut sum = TautExpr::zero(2 * m);
    for (_, p) in family.iter() {
        sum = sum.add(p.class())?;
    }
    let diff = sum.sub(Correspondence::identity(m).class())?.normalize(model);
    let status = if diff.is_zero() { Status::Pass } else { Status::Fail };
    report.push("completeness", status, witness_or_none(&diff), start.elapsed());

    let start = Instant::now();
    let mut witness = None;
    for (i, p) in family.iter() {
        let dual = family.projector(4 * m - i).ok_or_else(|| {
            Error::InvalidArgument(format!("family has no projector of index {}", 4 * m - i))
        })?;
        let diff = p.transpose().class().sub(dual.class())?.normalize(model);
        if !diff.is_zero() {
            witness = Some(format!("pi^{i}: {diff}"));
            break;
        }
    }
    let status = if witness.is_none() { Status::Pass } else { Status::Fail };
    report.push("self-duality", status, witness, start.elapsed());
    clock.check(0)
}

/// Identifiers of the checks produced by [`verify_ck_axioms`] followed by
/// [`verify_graded_traces`] for a family on `S^m`, in report order.
pub fn projector_check_ids(m: usize) -> Vec<String> {
    let idx: Vec<usize> = (0..=4 * m).step_by(2).collect();
    let mut ids = Vec::new();
    for &i in &idx {
        for &j in idx.iter().filter(|&&j| j >= i) {
            ids.push(if i == j {
                format!("idempotent pi^{i}")
            } else {
                format!("orthogonal pi^{i} pi^{j}")
            });
        }
    }
    ids.push("completeness".into());
    ids.push("self-duality".into());
    ids.extend(idx.iter().map(|i| format!("traces pi^{i}")));
    ids
}

/// `b_i(S^m)` from the Künneth expansion of the surface's Poincaré
/// polynomial.
pub fn power_betti(model: &CohomModel, m: usize) -> Vec<Q> {
    let b: Vec<Q> = model.betti().iter().map(|&x| q(x as i64)).collect();
    let mut out = vec![q(1)];
    for _ in 0..m {
        let mut next = vec![q(0); out.len() + 4];
        for (i, x) in out.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                next[i + j] += x * y;
            }
        }
        out = next;
    }
    out
}

/// Each `π^i` must have graded trace `b_i(S^m)` in degree `i` and 0 elsewhere.
pub fn verify_graded_traces(
    family: &ProjectorFamily,
    cohom: &CohomModel,
    report: &mut CheckReport,
) -> Result<()> {
    let expected = power_betti(cohom, family.arity);
    for (i, p) in family.iter() {
        let start = Instant::now();
        let traces = graded_traces(p, cohom)?;
        let bad: Vec<String> = traces
            .iter()
            .enumerate()
            .filter(|&(d, t)| *t != if d == i { expected[d].clone() } else { q(0) })
            .map(|(d, t)| format!("degree {d}: {t}"))
            .collect();
        let status = if bad.is_empty() { Status::Pass } else { Status::Fail };
        let witness = (!bad.is_empty()).then(|| bad.join(", "));
        report.push(format!("traces pi^{i}"), status, witness, start.elapsed());
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TripleRecord {
    pub m: usize,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub required: bool,
    pub chow_vanishes: bool,
    pub cohom_vanishes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl TripleRecord {
    pub fn passes(&self) -> bool {
        (!self.required || self.chow_vanishes) && (!self.cohom_vanishes || self.chow_vanishes)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiplicativityReport {
    pub m: usize,
    pub symmetry_reduced: bool,
    pub triples: Vec<TripleRecord>,
    /// Wall time of the cohomological evaluation of each triple.
    #[serde(skip)]
    pub timings: Vec<Duration>,
}

impl MultiplicativityReport {
    pub fn passes(&self) -> bool {
        self.triples.iter().all(TripleRecord::passes)
    }
}

/// The small diagonal of `S^m` inside `(S^m)^3`.
pub fn power_small_diagonal(m: usize, model: &SurfaceModel) -> Result<TautExpr> {
    let arity = 3 * m;
    let mut x = TautExpr::one(arity);
    for r in 1..=m {
        x = x
            .mul_raw(&TautExpr::diagonal(arity, r, m + r)?)?
            .mul_raw(&TautExpr::diagonal(arity, r, 2 * m + r)?)?;
    }
    Ok(x.normalize(model))
}

/// `(π^i ⊗ π^j ⊗ π^k)_* Δ_3` for every triple.
///
/// The tensor product of power projectors is a sum of tensor products of
/// surface projectors, one per factor of `S^{3m}`, and these act factor by
/// factor. The classes are built one factor at a time, keyed by the partial
/// index sums, so each partial image is computed once.
pub fn projected_small_diagonals(
    family: &ProjectorFamily,
    model: &SurfaceModel,
    symmetry_reduce: bool,
    clock: &BudgetClock,
) -> Result<BTreeMap<(usize, usize, usize), TautExpr>> {
    let m = family.arity;
    let surface = surface_projectors(model)?;
    let mut states: BTreeMap<[usize; 3], TautExpr> = BTreeMap::new();
    states.insert([0; 3], power_small_diagonal(m, model)?);
    for s in 1..=3 * m {
        let block = (s - 1) / m;
        let work: Vec<([usize; 3], usize, &TautExpr)> = states
            .iter()
            .flat_map(|(key, x)| SURFACE_INDICES.iter().map(move |&a| (*key, a, x)))
            .collect();
        let images: Vec<Result<([usize; 3], TautExpr)>> = work
            .par_iter()
            .map_init(
                || Normalizer::new(model),
                |n, &(mut key, a, x)| {
                    clock.check(x.len())?;
                    let y = surface.projectors[&a].act_on_factor(x, s, n)?;
                    key[block] += a;
                    Ok((key, y))
                },
            )
            .collect();
        let mut next: BTreeMap<[usize; 3], TautExpr> = BTreeMap::new();
        for r in images {
            let (key, y) = r?;
            if y.is_zero() {
                continue;
            }
            match next.get_mut(&key) {
                Some(acc) => *acc = acc.add(&y)?,
                None => {
                    next.insert(key, y);
                }
            }
        }
        if symmetry_reduce && s % m == 0 && block >= 1 {
            // the small diagonal is symmetric in the three blocks, so only
            // non-decreasing triples need to be carried along
            next.retain(|key, _| key[block - 1] <= key[block]);
        }
        next.retain(|_, x| !x.is_zero());
        states = next;
        clock.check(states.values().map(TautExpr::len).max().unwrap_or(0))?;
    }
    Ok(states.into_iter().map(|([i, j, k], x)| ((i, j, k), x)).collect())
}

pub fn check_multiplicativity(
    family: &ProjectorFamily,
    model: &SurfaceModel,
    symmetry_reduce: bool,
    clock: &BudgetClock,
) -> Result<MultiplicativityReport> {
    require_k3(model)?;
    let m = family.arity;
    let cohom = CohomModel::for_surface(model)?;
    let classes = projected_small_diagonals(family, model, symmetry_reduce, clock)?;
    let indices: Vec<usize> = family.indices().collect();
    let mut triples = Vec::new();
    for &i in &indices {
        for &j in &indices {
            for &k in &indices {
                if symmetry_reduce && !(i <= j && j <= k) {
                    continue;
                }
                triples.push((i, j, k));
            }
        }
    }
    let zero = TautExpr::zero(3 * m);
    let records: Vec<Result<(TripleRecord, Duration)>> = triples
        .par_iter()
        .map(|&(i, j, k)| {
            clock.check(0)?;
            let start = Instant::now();
            let z = classes.get(&(i, j, k)).unwrap_or(&zero);
            let chow_vanishes = z.is_zero();
            let cohom_vanishes = chow_vanishes || evaluate(z, &cohom)?.is_zero();
            let record = TripleRecord {
                m,
                i,
                j,
                k,
                required: i + j + k != 8 * m,
                chow_vanishes,
                cohom_vanishes,
                witness: witness_or_none(z),
            };
            Ok((record, start.elapsed()))
        })
        .collect();
    let (triples, timings) = records.into_iter().collect::<Result<Vec<_>>>()?.into_iter().unzip();
    Ok(MultiplicativityReport {
        m,
        symmetry_reduced: symmetry_reduce,
        triples,
        timings,
    })
}

/// Cohomological counterpart for any model: the Künneth components of the
/// small diagonal of `S^m` in `H^*((S^m)^3)` sit only in degrees
/// `(i, j, k)` with `i + j + k = 8m`. Returns the degree triples that occur.
pub fn cohomological_multiplicativity(
    model: &SurfaceModel,
    m: usize,
) -> Result<BTreeMap<(usize, usize, usize), usize>> {
    let cohom = CohomModel::for_surface(model)?;
    let t = evaluate(&power_small_diagonal(m, model)?, &cohom)?;
    let mut out = BTreeMap::new();
    for (key, _) in t.components() {
        let deg = |block: usize| -> usize {
            key[block * m..(block + 1) * m]
                .iter()
                .map(|&b| cohom.degree(b as usize))
                .sum()
        };
        *out.entry((deg(0), deg(1), deg(2))).or_insert(0) += 1;
    }
    Ok(out)
}

/// Components `CH^c_s = (π^{2c - s})_* CH^c` of a homogeneous class.
pub fn bigrading(
    x: &TautExpr,
    family: &ProjectorFamily,
    model: &SurfaceModel,
) -> Result<BTreeMap<i64, TautExpr>> {
    let mut n = Normalizer::new(model);
    bigrading_with(x, family, &mut n)
}

pub fn bigrading_with(
    x: &TautExpr,
    family: &ProjectorFamily,
    n: &mut Normalizer<'_>,
) -> Result<BTreeMap<i64, TautExpr>> {
    let x = n.normalize(x);
    let Some(c) = x.homogeneous_codim()? else {
        return Ok(BTreeMap::new());
    };
    let mut out = BTreeMap::new();
    for (i, p) in family.iter() {
        let s = 2 * c as i64 - i as i64;
        out.insert(s, p.act_on_cycle_with(&x, n)?);
    }
    Ok(out)
}
