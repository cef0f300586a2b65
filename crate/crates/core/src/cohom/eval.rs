use std::collections::HashMap;

use num_traits::{One, Zero};

use super::model::CohomModel;
use super::tensor::KunnethTensor;
use crate::corr::Correspondence;
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::ring::{Generator, Monomial, TautExpr};

struct Evaluator<'m> {
    model: &'m CohomModel,
    arity: usize,
    cache: HashMap<Generator, KunnethTensor>,
}

impl<'m> Evaluator<'m> {
    fn generator(&mut self, g: Generator) -> Result<KunnethTensor> {
        if let Some(t) = self.cache.get(&g) {
            return Ok(t.clone());
        }
        let m = self.model;
        let n = self.arity;
        let t = match g {
            Generator::Point(r) => KunnethTensor::pullback_class(n, r, m.point_class(), m),
            Generator::Divisor(a, r) => KunnethTensor::pullback_class(n, r, m.divisor_class(a)?, m),
            Generator::Canonical(r) => KunnethTensor::pullback_class(n, r, m.canonical_class(), m),
            Generator::SecondChern(r) => {
                KunnethTensor::pullback_class(n, r, m.point_class(), m)
                    .scale(&Q::from_integer(m.chi_top().into()))
            }
            Generator::Diagonal(r, s) => {
                let mut t = KunnethTensor::zero(n);
                for (i, j, c) in m.diagonal_components() {
                    let mut key = vec![m.unit() as u8; n];
                    key[r - 1] = *i as u8;
                    key[s - 1] = *j as u8;
                    t.add_term(key, c.clone());
                }
                t
            }
        };
        self.cache.insert(g, t.clone());
        Ok(t)
    }

    fn monomial(&mut self, mono: &Monomial) -> Result<KunnethTensor> {
        let mut acc = KunnethTensor::one(self.arity, self.model);
        for g in mono.generators() {
            let t = self.generator(*g)?;
            acc = acc.mul(&t, self.model)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }
}

/// The cohomology class of `x`. Every generator has even degree, so the
/// order of factors inside a monomial does not matter.
pub fn evaluate(x: &TautExpr, model: &CohomModel) -> Result<KunnethTensor> {
    let mut ev = Evaluator {
        model,
        arity: x.arity(),
        cache: HashMap::new(),
    };
    let mut out = KunnethTensor::zero(x.arity());
    for (m, c) in x.terms() {
        let t = ev.monomial(m)?;
        out.add_assign(&t.scale(c))?;
    }
    Ok(out)
}

pub fn is_cohomologically_trivial(x: &TautExpr, model: &CohomModel) -> Result<bool> {
    Ok(evaluate(x, model)?.is_zero())
}

/// Degree of a top-codimension class.
pub fn integral(x: &TautExpr, model: &CohomModel) -> Result<Q> {
    let top = 2 * x.arity();
    if let Some(c) = x.codims().into_iter().find(|&c| c != top) {
        return Err(Error::WrongCodimension {
            expected: top,
            found: c,
        });
    }
    Ok(evaluate(x, model)?.top_coefficient(model))
}

/// `c_*(x) = pr_{2*}(pr_1^* x · c)` for a class `c` on `S^M × S^N`.
pub fn act_on_tensor(
    class: &KunnethTensor,
    source: usize,
    x: &KunnethTensor,
    model: &CohomModel,
) -> Result<KunnethTensor> {
    if x.arity() != source || class.arity() < source {
        return Err(Error::ArityMismatch {
            left: x.arity(),
            right: source,
        });
    }
    let map: Vec<usize> = (1..=source).collect();
    let mut t = x.pullback(&map, class.arity(), model)?.mul(class, model)?;
    for _ in 0..source {
        t = t.pushforward(1, model)?;
    }
    Ok(t)
}

/// Traces of `c_*` on `H^i(S^M)` for `i = 0..=4M`.
pub fn graded_traces(c: &Correspondence, model: &CohomModel) -> Result<Vec<Q>> {
    let m = c.source();
    if c.target() != m {
        return Err(Error::ArityMismatch {
            left: c.source(),
            right: c.target(),
        });
    }
    let class = evaluate(c.class(), model)?;
    let mut traces = vec![Q::zero(); 4 * m + 1];
    for (key, coeff) in class.components() {
        let target_key = &key[m..];
        let mut x = KunnethTensor::zero(m);
        x.add_term(target_key.to_vec(), Q::one());
        let mut single = KunnethTensor::zero(2 * m);
        single.add_term(key.clone(), coeff.clone());
        let image = act_on_tensor(&single, m, &x, model)?;
        let contribution = image.get(target_key);
        if !contribution.is_zero() {
            traces[KunnethTensor::degree_of(target_key, model)] += contribution;
        }
    }
    Ok(traces)
}

/// Lefschetz number `Σ (-1)^i tr(c_* | H^i)`.
pub fn trace_of_correspondence(c: &Correspondence, model: &CohomModel) -> Result<Q> {
    Ok(graded_traces(c, model)?
        .into_iter()
        .enumerate()
        .map(|(i, t)| if i % 2 == 0 { t } else { -t })
        .sum())
}

/// Matrix of `c_*` on the tensor basis of `H^*(S^M)`, keyed by basis tuple.
pub fn induced_map(
    c: &Correspondence,
    model: &CohomModel,
) -> Result<HashMap<Vec<u8>, KunnethTensor>> {
    let m = c.source();
    let class = evaluate(c.class(), model)?;
    let mut out = HashMap::new();
    let dim = model.dim();
    let total = dim.checked_pow(m as u32).unwrap_or(usize::MAX);
    for idx in 0..total {
        let mut key = Vec::with_capacity(m);
        let mut rest = idx;
        for _ in 0..m {
            key.push((rest % dim) as u8);
            rest /= dim;
        }
        let mut x = KunnethTensor::zero(m);
        x.add_term(key.clone(), Q::one());
        out.insert(key, act_on_tensor(&class, m, &x, model)?);
    }
    Ok(out)
}
