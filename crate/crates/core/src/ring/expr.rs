use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rewrite::Normalizer;
use super::{Generator, Monomial};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};
use crate::surface::SurfaceModel;

/// An exact linear combination of monomials on `S^N`.
///
/// The term map never stores zero coefficients, so structural equality of
/// normalised expressions is equality in the ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TautExpr {
    arity: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl TautExpr {
    pub fn zero(arity: usize) -> Self {
        TautExpr {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::monomial(arity, Monomial::one(), Q::one())
    }

    pub fn constant(arity: usize, c: Q) -> Self {
        Self::monomial(arity, Monomial::one(), c)
    }

    pub(crate) fn monomial(arity: usize, m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TautExpr { arity, terms }
    }

    pub(crate) fn from_map(arity: usize, mut terms: BTreeMap<Monomial, Q>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        TautExpr { arity, terms }
    }

    /// Builds an expression from monomial terms, checking factor indices.
    pub fn from_terms(
        arity: usize,
        terms: impl IntoIterator<Item = (Vec<Generator>, Q)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (gens, c) in terms {
            for g in &gens {
                check_generator(g, arity)?;
            }
            *map.entry(Monomial::new(gens)).or_insert_with(Q::zero) += c;
        }
        Ok(Self::from_map(arity, map))
    }

    pub fn generator(arity: usize, g: Generator) -> Result<Self> {
        check_generator(&g, arity)?;
        Ok(Self::monomial(arity, Monomial::new(vec![g]), Q::one()))
    }

    pub fn point(arity: usize, r: usize) -> Result<Self> {
        Self::generator(arity, Generator::Point(r))
    }

    pub fn divisor(arity: usize, a: usize, r: usize) -> Result<Self> {
        Self::generator(arity, Generator::Divisor(a, r))
    }

    pub fn diagonal(arity: usize, r: usize, s: usize) -> Result<Self> {
        Self::generator(arity, Generator::diagonal(r, s)?)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> Q {
        self.coefficient(&Monomial::one())
    }

    /// Codimensions of the terms present.
    pub fn codims(&self) -> BTreeSet<usize> {
        self.terms.keys().map(Monomial::codim).collect()
    }

    /// `Ok(None)` for zero, `Ok(Some(c))` when every term has codimension `c`.
    pub fn homogeneous_codim(&self) -> Result<Option<usize>> {
        let c = self.codims();
        match c.len() {
            0 => Ok(None),
            1 => Ok(c.into_iter().next()),
            _ => Err(Error::NotHomogeneous),
        }
    }

    /// Part of codimension `c`.
    pub fn graded_part(&self, c: usize) -> TautExpr {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.codim() == c)
            .map(|(m, q)| (m.clone(), q.clone()))
            .collect();
        TautExpr::from_map(self.arity, terms)
    }

    /// Largest divisor index used, for validation against a model.
    pub fn max_divisor_index(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|m| m.generators().iter())
            .filter_map(|g| match g {
                Generator::Divisor(a, _) => Some(*a),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn check_model(&self, model: &SurfaceModel) -> Result<()> {
        let a = self.max_divisor_index();
        if a > model.ns_rank() {
            return Err(Error::DivisorOutOfRange {
                index: a,
                rank: model.ns_rank(),
            });
        }
        Ok(())
    }

    fn same_arity(&self, other: &TautExpr) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TautExpr) -> Result<TautExpr> {
        self.same_arity(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(Q::zero) += c;
        }
        Ok(TautExpr::from_map(self.arity, terms))
    }

    pub fn sub(&self, other: &TautExpr) -> Result<TautExpr> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TautExpr {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> TautExpr {
        if c.is_zero() {
            return TautExpr::zero(self.arity);
        }
        TautExpr {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, q)| (m.clone(), q * c)).collect(),
        }
    }

    /// Product in the free polynomial ring, without reduction.
    pub fn mul_raw(&self, other: &TautExpr) -> Result<TautExpr> {
        self.same_arity(other)?;
        let mut terms: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *terms.entry(m1.mul(m2)).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        Ok(TautExpr::from_map(self.arity, terms))
    }

    /// Normalised product.
    pub fn multiply(&self, other: &TautExpr, model: &SurfaceModel) -> Result<TautExpr> {
        Ok(self.mul_raw(other)?.normalize(model))
    }

    pub fn multiply_with(&self, other: &TautExpr, n: &mut Normalizer<'_>) -> Result<TautExpr> {
        Ok(n.normalize(&self.mul_raw(other)?))
    }

    /// Pushes forward the listed factors (indices refer to `self`) in the
    /// given order.
    pub fn pushforward_factors(&self, factors: &[usize], n: &mut Normalizer<'_>) -> Result<TautExpr> {
        let mut x = n.normalize(self);
        let mut remaining: Vec<usize> = factors.to_vec();
        while let Some(d) = remaining.first().copied() {
            x = x.pushforward_with(d, n)?;
            remaining.remove(0);
            for r in remaining.iter_mut() {
                if *r == d {
                    return Err(Error::RepeatedIndex(d));
                }
                if *r > d {
                    *r -= 1;
                }
            }
        }
        Ok(x)
    }

    pub fn pow_raw(&self, k: u32) -> TautExpr {
        let mut acc = TautExpr::one(self.arity);
        for _ in 0..k {
            acc = acc.mul_raw(self).expect("same arity");
        }
        acc
    }

    pub fn normalize(&self, model: &SurfaceModel) -> TautExpr {
        Normalizer::new(model).normalize(self)
    }

    /// Pullback along the coordinate projection `S^M -> S^N` that sends
    /// factor `r` of the source expression to factor `index_map[r-1]`.
    pub fn pullback(&self, index_map: &[usize], target_arity: usize) -> Result<TautExpr> {
        if index_map.len() != self.arity {
            return Err(Error::ArityMismatch {
                left: index_map.len(),
                right: self.arity,
            });
        }
        let mut seen = BTreeSet::new();
        for &t in index_map {
            if t == 0 || t > target_arity {
                return Err(Error::IndexOutOfRange {
                    index: t,
                    arity: target_arity,
                });
            }
            if !seen.insert(t) {
                return Err(Error::NonInjective);
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.relabel(|r| index_map[r - 1]), c.clone()))
            .collect();
        Ok(TautExpr::from_map(target_arity, terms))
    }

    /// Relabels factor `r` as `perm[r-1]`.
    pub fn apply_permutation(&self, perm: &[usize]) -> Result<TautExpr> {
        if perm.len() != self.arity {
            return Err(Error::NotAPermutation(self.arity));
        }
        self.pullback(perm, self.arity)
            .map_err(|_| Error::NotAPermutation(self.arity))
    }

    /// Average over a permutation group: the projector onto invariants.
    pub fn symmetrize(&self, group: &[Vec<usize>]) -> Result<TautExpr> {
        if group.is_empty() {
            return Err(Error::EmptyGroup);
        }
        let mut acc = TautExpr::zero(self.arity);
        for g in group {
            acc = acc.add(&self.apply_permutation(g)?)?;
        }
        Ok(acc.scale(&Q::new(1.into(), group.len().into())))
    }

    /// Pushforward along the projection forgetting factor `dropped`.
    ///
    /// A diagonal through `dropped` is integrated out by the projection
    /// formula (substituting its other end for `dropped` everywhere; a
    /// diagonal collapsing onto itself leaves `c`). Otherwise the decoration
    /// on `dropped` must be a zero-cycle, which contributes its degree.
    pub fn pushforward(&self, dropped: usize, model: &SurfaceModel) -> Result<TautExpr> {
        let mut n = Normalizer::new(model);
        self.pushforward_with(dropped, &mut n)
    }

    pub fn pushforward_with(
        &self,
        dropped: usize,
        normalizer: &mut Normalizer<'_>,
    ) -> Result<TautExpr> {
        if dropped == 0 || dropped > self.arity {
            return Err(Error::IndexOutOfRange {
                index: dropped,
                arity: self.arity,
            });
        }
        let model = normalizer.model().clone();
        let down = |r: usize| if r > dropped { r - 1 } else { r };
        let mut terms: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m, c) in &self.terms {
            let Some((m2, deg)) = push_monomial(m, dropped, &model) else {
                continue;
            };
            let m2 = m2.relabel(down);
            *terms.entry(m2).or_insert_with(Q::zero) += c * deg;
        }
        let raw = TautExpr::from_map(self.arity - 1, terms);
        Ok(normalizer.normalize(&raw))
    }

    /// Pushforward to a point.
    pub fn degree(&self, model: &SurfaceModel) -> Result<Q> {
        let mut n = Normalizer::new(model);
        let mut x = n.normalize(self);
        while x.arity > 0 {
            x = x.pushforward_with(x.arity, &mut n)?;
        }
        Ok(x.constant_term())
    }
}

fn check_generator(g: &Generator, arity: usize) -> Result<()> {
    let check = |r: usize| {
        if r == 0 || r > arity {
            Err(Error::IndexOutOfRange { index: r, arity })
        } else {
            Ok(())
        }
    };
    match *g {
        Generator::Diagonal(r, s) => {
            if r == s {
                return Err(Error::RepeatedIndex(r));
            }
            check(r)?;
            check(s)
        }
        Generator::Divisor(a, r) => {
            if a == 0 {
                return Err(Error::DivisorOutOfRange { index: a, rank: 0 });
            }
            check(r)
        }
        g => check(g.factor().unwrap()),
    }
}

/// Projection formula for one monomial; `None` when it pushes to zero.
fn push_monomial(m: &Monomial, d: usize, model: &SurfaceModel) -> Option<(Monomial, Q)> {
    let gens = m.generators();
    if let Some(pos) = gens
        .iter()
        .position(|g| matches!(g, Generator::Diagonal(..)) && g.touches(d))
    {
        let Generator::Diagonal(r, s) = gens[pos] else { unreachable!() };
        let keep = if r == d { s } else { r };
        let rest = m.replace(&[pos], &[]);
        return Some((rest.relabel(|x| if x == d { keep } else { x }), Q::one()));
    }
    let (here, rest): (Vec<Generator>, Vec<Generator>) =
        gens.iter().partition(|g| g.factor() == Some(d));
    let codim: usize = here.iter().map(Generator::codim).sum();
    if codim != 2 {
        return None;
    }
    let deg = match here.as_slice() {
        [Generator::Point(_)] => Q::one(),
        [Generator::SecondChern(_)] => model.chi(),
        [Generator::Divisor(a, _), Generator::Divisor(b, _)] => model.pairing(*a, *b),
        [Generator::Canonical(_), Generator::Canonical(_)] => {
            Q::from_integer(model.canonical_self_intersection().into())
        }
        // canonical class orthogonal to the named divisors
        _ => Q::zero(),
    };
    if deg.is_zero() {
        return None;
    }
    Some((Monomial::new(rest), deg))
}

/// Normalised class of the small diagonal `{x_{i_1} = ... = x_{i_k}}` in `S^N`.
pub fn small_diagonal(arity: usize, indices: &[usize], model: &SurfaceModel) -> Result<TautExpr> {
    if indices.len() < 2 {
        return Err(Error::InvalidArgument(
            "a small diagonal needs at least two factors".into(),
        ));
    }
    let mut seen = BTreeSet::new();
    for &i in indices {
        if !seen.insert(i) {
            return Err(Error::RepeatedIndex(i));
        }
    }
    let mut acc = TautExpr::one(arity);
    for &j in &indices[1..] {
        acc = acc.mul_raw(&TautExpr::diagonal(arity, indices[0], j)?)?;
    }
    Ok(acc.normalize(model))
}

/// DSL form: `2*o(1)*o(2) - 1/2*D(1,2)`, `0` for zero.
impl fmt::Display for TautExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&fmt_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_q(&abs))?;
            }
        }
        Ok(())
    }
}
