use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A generator of the tautological ring of `S^N`. Factor indices are 1-based.
///
/// The derived order (points, divisors, canonical, Chern, diagonals, then by
/// indices) is the fixed generator order used for canonical printing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `o_r`, the distinguished degree-one zero-cycle on factor `r`.
    Point(usize),
    /// `h_{a,r}`: divisor `a` of the Néron–Severi basis on factor `r`.
    Divisor(usize, usize),
    /// `k_r`, the canonical class.
    Canonical(usize),
    /// `c_r`, the second Chern class.
    SecondChern(usize),
    /// `D_{rs}` with `r < s`.
    Diagonal(usize, usize),
}

impl Generator {
    pub fn diagonal(r: usize, s: usize) -> Result<Self> {
        match r.cmp(&s) {
            Ordering::Less => Ok(Generator::Diagonal(r, s)),
            Ordering::Greater => Ok(Generator::Diagonal(s, r)),
            Ordering::Equal => Err(Error::RepeatedIndex(r)),
        }
    }

    pub fn codim(&self) -> usize {
        match self {
            Generator::Divisor(..) | Generator::Canonical(_) => 1,
            _ => 2,
        }
    }

    /// The factor carrying a non-diagonal generator.
    pub fn factor(&self) -> Option<usize> {
        match *self {
            Generator::Point(r)
            | Generator::Divisor(_, r)
            | Generator::Canonical(r)
            | Generator::SecondChern(r) => Some(r),
            Generator::Diagonal(..) => None,
        }
    }

    pub fn max_factor(&self) -> usize {
        match *self {
            Generator::Diagonal(_, s) => s,
            g => g.factor().unwrap_or(0),
        }
    }

    pub fn touches(&self, r: usize) -> bool {
        match *self {
            Generator::Diagonal(a, b) => a == r || b == r,
            g => g.factor() == Some(r),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self, Generator::Diagonal(..))
    }

    /// Same generator placed on `r` instead of its current factor.
    pub(crate) fn on_factor(&self, r: usize) -> Generator {
        match *self {
            Generator::Point(_) => Generator::Point(r),
            Generator::Divisor(a, _) => Generator::Divisor(a, r),
            Generator::Canonical(_) => Generator::Canonical(r),
            Generator::SecondChern(_) => Generator::SecondChern(r),
            Generator::Diagonal(..) => unreachable!("diagonals carry two factors"),
        }
    }

    /// Relabels factor indices. A diagonal whose endpoints collide becomes
    /// its self-intersection, the pulled-back second Chern class.
    pub(crate) fn relabel(&self, f: impl Fn(usize) -> usize) -> Generator {
        match *self {
            Generator::Diagonal(r, s) => {
                let (a, b) = (f(r), f(s));
                Generator::diagonal(a, b).unwrap_or(Generator::SecondChern(a))
            }
            g => g.on_factor(f(g.factor().unwrap())),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Point(r) => write!(f, "o({r})"),
            Generator::Divisor(a, r) => write!(f, "h({a},{r})"),
            Generator::Canonical(r) => write!(f, "k({r})"),
            Generator::SecondChern(r) => write!(f, "c({r})"),
            Generator::Diagonal(r, s) => write!(f, "D({r},{s})"),
        }
    }
}

/// A commutative monomial: a sorted multiset of generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<Generator>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut gens: Vec<Generator>) -> Self {
        gens.sort_unstable();
        Monomial(gens)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn codim(&self) -> usize {
        self.0.iter().map(Generator::codim).sum()
    }

    pub fn max_factor(&self) -> usize {
        self.0.iter().map(Generator::max_factor).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut gens = Vec::with_capacity(self.0.len() + other.0.len());
        gens.extend_from_slice(&self.0);
        gens.extend_from_slice(&other.0);
        Monomial::new(gens)
    }

    /// Codimension of the non-diagonal generators sitting on factor `r`.
    pub fn decoration_codim(&self, r: usize) -> usize {
        self.0
            .iter()
            .filter(|g| g.factor() == Some(r))
            .map(Generator::codim)
            .sum()
    }

    pub fn diagonals(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().filter_map(|g| match *g {
            Generator::Diagonal(r, s) => Some((r, s)),
            _ => None,
        })
    }

    /// Removes the generators at positions `drop` and appends `add`.
    pub(crate) fn replace(&self, drop: &[usize], add: &[Generator]) -> Monomial {
        let mut gens: Vec<Generator> = self
            .0
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, g)| *g)
            .collect();
        gens.extend_from_slice(add);
        Monomial::new(gens)
    }

    pub(crate) fn relabel(&self, f: impl Fn(usize) -> usize) -> Monomial {
        Monomial::new(self.0.iter().map(|g| g.relabel(&f)).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree-lexicographic: codimension first, then the generator lists.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.codim()
            .cmp(&other.codim())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == g {
                run += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if run > 1 {
                write!(f, "{g}^{run}")?;
            } else {
                write!(f, "{g}")?;
            }
            i += run;
        }
        Ok(())
    }
}
