use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::model::{Class, CohomModel};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};

/// Element of `H^*(S)^{⊗N}`: sparse map from basis-index tuples to
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KunnethTensor {
    arity: usize,
    components: HashMap<Vec<u8>, Q>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TensorEntry {
    pub slots: Vec<String>,
    pub coefficient: String,
}

impl KunnethTensor {
    pub fn zero(arity: usize) -> Self {
        KunnethTensor {
            arity,
            components: HashMap::new(),
        }
    }

    /// `1 ⊗ ... ⊗ 1`.
    pub fn one(arity: usize, model: &CohomModel) -> Self {
        let mut t = Self::zero(arity);
        t.components
            .insert(vec![model.unit() as u8; arity], Q::one());
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn get(&self, key: &[u8]) -> Q {
        self.components.get(key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<u8>, &Q)> {
        self.components.iter()
    }

    pub(crate) fn add_term(&mut self, key: Vec<u8>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.components.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// `pr_r^* x`.
    pub fn pullback_class(arity: usize, r: usize, x: &Class, model: &CohomModel) -> Self {
        let mut t = Self::zero(arity);
        for (i, c) in x {
            let mut key = vec![model.unit() as u8; arity];
            key[r - 1] = *i as u8;
            t.add_term(key, c.clone());
        }
        t
    }

    pub fn add_assign(&mut self, other: &KunnethTensor) -> Result<()> {
        self.check_arity(other)?;
        for (k, c) in &other.components {
            self.add_term(k.clone(), c.clone());
        }
        Ok(())
    }

    pub fn add(&self, other: &KunnethTensor) -> Result<KunnethTensor> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> KunnethTensor {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        KunnethTensor {
            arity: self.arity,
            components: self.components.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    fn check_arity(&self, other: &KunnethTensor) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    /// Cup product with the Koszul sign `(-1)^{Σ_{i>j} |a_i| |b_j|}`.
    pub fn mul(&self, other: &KunnethTensor, model: &CohomModel) -> Result<KunnethTensor> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.arity);
        for (ka, ca) in &self.components {
            // suffix parity of a's degrees: parity of Σ_{i>j} |a_i|
            let mut suffix = vec![0usize; self.arity + 1];
            for i in (0..self.arity).rev() {
                suffix[i] = suffix[i + 1] + model.degree(ka[i] as usize);
            }
            'pairs: for (kb, cb) in &other.components {
                let mut sign_exp = 0;
                let mut coeff = ca * cb;
                let mut key = Vec::with_capacity(self.arity);
                for j in 0..self.arity {
                    let (a, b) = (ka[j] as usize, kb[j] as usize);
                    sign_exp += suffix[j + 1] * model.degree(b);
                    match model.product(a, b).as_slice() {
                        [] => continue 'pairs,
                        [(k, c)] => {
                            key.push(*k as u8);
                            coeff *= c;
                        }
                        _ => unreachable!("cohomology models have monomial structure constants"),
                    }
                }
                if sign_exp % 2 == 1 {
                    coeff = -coeff;
                }
                out.add_term(key, coeff);
            }
        }
        Ok(out)
    }

    /// Pullback along the projection `S^M -> S^N` sending slot `r` to
    /// `map[r-1]`, i.e. the product `Π_r pr_{map(r)}^* a_r` in slot order.
    pub fn pullback(&self, map: &[usize], target: usize, model: &CohomModel) -> Result<Self> {
        if map.len() != self.arity {
            return Err(Error::ArityMismatch {
                left: map.len(),
                right: self.arity,
            });
        }
        let mut out = Self::zero(target);
        for (k, c) in &self.components {
            let mut key = vec![model.unit() as u8; target];
            let mut odd_inversions = 0;
            for r in 0..self.arity {
                key[map[r] - 1] = k[r];
                for s in r + 1..self.arity {
                    if map[r] > map[s] {
                        odd_inversions += model.degree(k[r] as usize) * model.degree(k[s] as usize);
                    }
                }
            }
            let c = if odd_inversions % 2 == 1 { -c.clone() } else { c.clone() };
            out.add_term(key, c);
        }
        Ok(out)
    }

    /// Integration over slot `d` (1-based): keeps the coefficient of the
    /// point class there. The point class has even degree, so no sign.
    pub fn pushforward(&self, d: usize, model: &CohomModel) -> Result<Self> {
        if d == 0 || d > self.arity {
            return Err(Error::IndexOutOfRange {
                index: d,
                arity: self.arity,
            });
        }
        let mut out = Self::zero(self.arity - 1);
        for (k, c) in &self.components {
            if k[d - 1] as usize != model.top() {
                continue;
            }
            let mut key = k.clone();
            key.remove(d - 1);
            out.add_term(key, c.clone());
        }
        Ok(out)
    }

    /// Coefficient of `pt ⊗ ... ⊗ pt`.
    pub fn top_coefficient(&self, model: &CohomModel) -> Q {
        self.get(&vec![model.top() as u8; self.arity])
    }

    /// Total degree of each component, summed with multiplicity.
    pub fn degree_of(key: &[u8], model: &CohomModel) -> usize {
        key.iter().map(|&i| model.degree(i as usize)).sum()
    }

    /// Sorted sparse listing for reports.
    pub fn entries(&self, model: &CohomModel) -> Vec<TensorEntry> {
        let mut keys: Vec<&Vec<u8>> = self.components.keys().collect();
        keys.sort();
        keys.into_iter()
            .map(|k| TensorEntry {
                slots: k.iter().map(|&i| model.label(i as usize).to_string()).collect(),
                coefficient: fmt_q(&self.components[k]),
            })
            .collect()
    }
}
