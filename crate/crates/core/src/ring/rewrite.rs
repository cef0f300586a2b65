//! The rewriting system that puts tautological expressions in normal form.
//!
//! Rules, with `chi = chi_top(S)`:
//!
//! | rule | left side            | right side                                               |
//! |------|----------------------|----------------------------------------------------------|
//! | R1   | `c_r`                | `chi o_r`                                                |
//! | R2   | `k_r`                | `0` (K3 and abelian)                                     |
//! | R3   | `x_r y_r`            | `h_a h_b -> gram[a,b] o`, `k k -> k2 o`, `o x, k h -> 0`   |
//! | R4   | `D_rs o_r`           | `o_r o_s`                                                |
//! | R5   | `D_rs x_r` (divisor) | `x_r o_s + o_r x_s`                                      |
//! | R6   | `D_rs^2`             | `chi o_r o_s`                                            |
//! | R7   | `D_rs D_rt`          | `D_rs o_t + D_rt o_s + D_st o_r - o_r o_s - o_r o_t - o_s o_t` |
//! | dim  | decoration of codim > 2 on a factor, or total codim > 2N | `0`            |
//!
//! The default strategy applies the factor-local rules first, then R4-R6,
//! then R7. Every rule strictly lowers the tuple (number of diagonals,
//! number of Chern generators, number of generators) lexicographically, so
//! reduction terminates under any strategy.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::Rng;

use super::{Generator, Monomial, TautExpr};
use crate::rational::{q, Q};
use crate::surface::{Mode, SurfaceModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    ChernToPoint,
    CanonicalVanishes,
    Dimension,
    FactorProduct,
    DiagonalPoint,
    DiagonalDivisor,
    DiagonalSquare,
    DiagonalPair,
}

impl Rule {
    pub const ALL: [Rule; 8] = [
        Rule::ChernToPoint,
        Rule::CanonicalVanishes,
        Rule::Dimension,
        Rule::FactorProduct,
        Rule::DiagonalPoint,
        Rule::DiagonalDivisor,
        Rule::DiagonalSquare,
        Rule::DiagonalPair,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Rule::ChernToPoint => "R1",
            Rule::CanonicalVanishes => "R2",
            Rule::FactorProduct => "R3",
            Rule::DiagonalPoint => "R4",
            Rule::DiagonalDivisor => "R5",
            Rule::DiagonalSquare => "R6",
            Rule::DiagonalPair => "R7",
            Rule::Dimension => "dim",
        }
    }

    fn bit(self) -> u16 {
        1 << (self as u16)
    }
}

/// The set of rules active for a normalisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleSet(u16);

impl RuleSet {
    pub fn empty() -> Self {
        RuleSet(0)
    }

    /// K3: everything. Generic: everything but R2 (the canonical class is
    /// live). Abelian: only R1, R2 and dimension vanishing.
    pub fn for_model(model: &SurfaceModel) -> Self {
        let rules: &[Rule] = match model.mode() {
            Mode::K3 => &Rule::ALL,
            Mode::GenericB1Zero => &[
                Rule::ChernToPoint,
                Rule::Dimension,
                Rule::FactorProduct,
                Rule::DiagonalPoint,
                Rule::DiagonalDivisor,
                Rule::DiagonalSquare,
                Rule::DiagonalPair,
            ],
            Mode::Abelian => &[Rule::ChernToPoint, Rule::CanonicalVanishes, Rule::Dimension],
        };
        rules.iter().fold(RuleSet::empty(), |s, &r| s.with(r))
    }

    pub fn with(self, rule: Rule) -> Self {
        RuleSet(self.0 | rule.bit())
    }

    pub fn without(self, rule: Rule) -> Self {
        RuleSet(self.0 & !rule.bit())
    }

    pub fn contains(self, rule: Rule) -> bool {
        self.0 & rule.bit() != 0
    }

    pub fn iter(self) -> impl Iterator<Item = Rule> {
        Rule::ALL.into_iter().filter(move |r| self.contains(*r))
    }
}

/// An applicable rule together with the generator positions it acts on.
/// For [`Rule::Dimension`], `first` is the offending factor (0 for the
/// total-codimension bound).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Redex {
    pub rule: Rule,
    pub first: usize,
    pub second: usize,
}

/// How to choose among several applicable redexes.
pub enum Strategy<'r> {
    /// Factor-local rules first, then R4-R6, then R7; memoised.
    Priority,
    /// Uniformly random redex at every step.
    Random(&'r mut dyn rand::RngCore),
}

fn is_decoration(g: &Generator) -> bool {
    matches!(
        g,
        Generator::Point(_) | Generator::Divisor(..) | Generator::Canonical(_)
    )
}

fn is_divisorial(g: &Generator) -> bool {
    matches!(g, Generator::Divisor(..) | Generator::Canonical(_))
}

fn other_end(d: (usize, usize), r: usize) -> Option<usize> {
    if d.0 == r {
        Some(d.1)
    } else if d.1 == r {
        Some(d.0)
    } else {
        None
    }
}

/// All redexes of `rule` in `m`.
pub fn redexes_for(rule: Rule, m: &Monomial, arity: usize, rules: RuleSet) -> Vec<Redex> {
    if !rules.contains(rule) {
        return Vec::new();
    }
    let gens = m.generators();
    let mut out = Vec::new();
    let red = |first, second| Redex {
        rule,
        first,
        second,
    };
    match rule {
        Rule::ChernToPoint => {
            for (i, g) in gens.iter().enumerate() {
                if matches!(g, Generator::SecondChern(_)) {
                    out.push(red(i, i));
                }
            }
        }
        Rule::CanonicalVanishes => {
            for (i, g) in gens.iter().enumerate() {
                if matches!(g, Generator::Canonical(_)) {
                    out.push(red(i, i));
                }
            }
        }
        Rule::Dimension => {
            if m.codim() > 2 * arity {
                out.push(red(0, 0));
            }
            let mut per_factor: BTreeMap<usize, usize> = BTreeMap::new();
            for g in gens {
                if let Some(r) = g.factor() {
                    *per_factor.entry(r).or_default() += g.codim();
                }
            }
            for (r, c) in per_factor {
                if c > 2 {
                    out.push(red(r, r));
                }
            }
        }
        Rule::FactorProduct => {
            for i in 0..gens.len() {
                if !is_decoration(&gens[i]) {
                    continue;
                }
                for j in i + 1..gens.len() {
                    if is_decoration(&gens[j]) && gens[i].factor() == gens[j].factor() {
                        out.push(red(i, j));
                    }
                }
            }
        }
        Rule::DiagonalPoint | Rule::DiagonalDivisor => {
            for (i, g) in gens.iter().enumerate() {
                let Generator::Diagonal(r, s) = *g else {
                    continue;
                };
                for (j, x) in gens.iter().enumerate() {
                    let hit = match rule {
                        Rule::DiagonalPoint => matches!(x, Generator::Point(_)),
                        _ => is_divisorial(x),
                    };
                    if hit && other_end((r, s), x.factor().unwrap()).is_some() {
                        out.push(red(i, j));
                    }
                }
            }
        }
        Rule::DiagonalSquare => {
            for i in 0..gens.len().saturating_sub(1) {
                if gens[i].is_diagonal() && gens[i] == gens[i + 1] {
                    out.push(red(i, i + 1));
                }
            }
        }
        Rule::DiagonalPair => {
            for i in 0..gens.len() {
                let Generator::Diagonal(a, b) = gens[i] else {
                    continue;
                };
                for j in i + 1..gens.len() {
                    let Generator::Diagonal(c, d) = gens[j] else {
                        continue;
                    };
                    let shared = [a, b].iter().filter(|x| **x == c || **x == d).count();
                    if shared == 1 {
                        out.push(red(i, j));
                    }
                }
            }
        }
    }
    out
}

pub fn all_redexes(m: &Monomial, arity: usize, rules: RuleSet) -> Vec<Redex> {
    rules
        .iter()
        .flat_map(|r| redexes_for(r, m, arity, rules))
        .collect()
}

fn first_redex(m: &Monomial, arity: usize, rules: RuleSet) -> Option<Redex> {
    rules
        .iter()
        .find_map(|r| redexes_for(r, m, arity, rules).into_iter().next())
}

/// One rewrite step at `redex`.
pub fn rewrite(m: &Monomial, redex: Redex, model: &SurfaceModel) -> Vec<(Monomial, Q)> {
    use Generator::*;
    let gens = m.generators();
    let (i, j) = (redex.first, redex.second);
    match redex.rule {
        Rule::ChernToPoint => {
            let chi = model.chi();
            if chi.is_zero() {
                return Vec::new();
            }
            let r = gens[i].factor().unwrap();
            vec![(m.replace(&[i], &[Point(r)]), chi)]
        }
        Rule::CanonicalVanishes | Rule::Dimension => Vec::new(),
        Rule::FactorProduct => {
            let r = gens[i].factor().unwrap();
            let coeff = match (gens[i], gens[j]) {
                (Divisor(a, _), Divisor(b, _)) => model.pairing(a, b),
                (Canonical(_), Canonical(_)) => q(model.canonical_self_intersection()),
                _ => Q::zero(),
            };
            if coeff.is_zero() {
                return Vec::new();
            }
            vec![(m.replace(&[i, j], &[Point(r)]), coeff)]
        }
        Rule::DiagonalPoint => {
            let Diagonal(r, s) = gens[i] else { unreachable!() };
            let t = gens[j].factor().unwrap();
            let u = other_end((r, s), t).unwrap();
            vec![(m.replace(&[i], &[Point(u)]), Q::one())]
        }
        Rule::DiagonalDivisor => {
            let Diagonal(r, s) = gens[i] else { unreachable!() };
            let x = gens[j];
            let t = x.factor().unwrap();
            let u = other_end((r, s), t).unwrap();
            vec![
                (m.replace(&[i, j], &[x, Point(u)]), Q::one()),
                (m.replace(&[i, j], &[Point(t), x.on_factor(u)]), Q::one()),
            ]
        }
        Rule::DiagonalSquare => {
            let chi = model.chi();
            if chi.is_zero() {
                return Vec::new();
            }
            let Diagonal(r, s) = gens[i] else { unreachable!() };
            vec![(m.replace(&[i, j], &[Point(r), Point(s)]), chi)]
        }
        Rule::DiagonalPair => {
            let Diagonal(a, b) = gens[i] else { unreachable!() };
            let Diagonal(c, d) = gens[j] else { unreachable!() };
            let v = if a == c || a == d { a } else { b };
            let x = other_end((a, b), v).unwrap();
            let y = other_end((c, d), v).unwrap();
            let dg = |p, q| Generator::diagonal(p, q).expect("distinct factors");
            let one = Q::one();
            let minus = -Q::one();
            let pick = [i, j];
            vec![
                (m.replace(&pick, &[dg(v, x), Point(y)]), one.clone()),
                (m.replace(&pick, &[dg(v, y), Point(x)]), one.clone()),
                (m.replace(&pick, &[dg(x, y), Point(v)]), one),
                (m.replace(&pick, &[Point(v), Point(x)]), minus.clone()),
                (m.replace(&pick, &[Point(v), Point(y)]), minus.clone()),
                (m.replace(&pick, &[Point(x), Point(y)]), minus),
            ]
        }
    }
}

/// Memoising normaliser for a fixed model and rule set.
pub struct Normalizer<'a> {
    model: &'a SurfaceModel,
    rules: RuleSet,
    cache: HashMap<(usize, Monomial), Vec<(Monomial, Q)>>,
}

impl<'a> Normalizer<'a> {
    pub fn new(model: &'a SurfaceModel) -> Self {
        Self::with_rules(model, RuleSet::for_model(model))
    }

    pub fn with_rules(model: &'a SurfaceModel, rules: RuleSet) -> Self {
        Normalizer {
            model,
            rules,
            cache: HashMap::new(),
        }
    }

    pub fn model(&self) -> &SurfaceModel {
        self.model
    }

    pub fn rules(&self) -> RuleSet {
        self.rules
    }

    pub fn is_normal(&self, m: &Monomial, arity: usize) -> bool {
        first_redex(m, arity, self.rules).is_none()
    }

    pub fn monomial(&mut self, m: &Monomial, arity: usize) -> Vec<(Monomial, Q)> {
        let key = (arity, m.clone());
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let result = match first_redex(m, arity, self.rules) {
            None => vec![(m.clone(), Q::one())],
            Some(redex) => {
                let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
                for (next, c) in rewrite(m, redex, self.model) {
                    for (nf, d) in self.monomial(&next, arity) {
                        *acc.entry(nf).or_insert_with(Q::zero) += &c * d;
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
        };
        self.cache.insert(key, result.clone());
        result
    }

    pub fn normalize(&mut self, x: &TautExpr) -> TautExpr {
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m, c) in x.terms() {
            for (nf, d) in self.monomial(m, x.arity()) {
                *acc.entry(nf).or_insert_with(Q::zero) += c * d;
            }
        }
        TautExpr::from_map(x.arity(), acc)
    }

    /// Normal form reached by picking a uniformly random redex at each step.
    pub fn normalize_random(&self, x: &TautExpr, rng: &mut dyn rand::RngCore) -> TautExpr {
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        let mut work: Vec<(Monomial, Q)> = x.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        while !work.is_empty() {
            let pick = rng.gen_range(0..work.len());
            let (m, c) = work.swap_remove(pick);
            let redexes = all_redexes(&m, x.arity(), self.rules);
            if redexes.is_empty() {
                *acc.entry(m).or_insert_with(Q::zero) += c;
                continue;
            }
            let redex = redexes[rng.gen_range(0..redexes.len())];
            for (next, d) in rewrite(&m, redex, self.model) {
                work.push((next, &c * d));
            }
        }
        TautExpr::from_map(x.arity(), acc)
    }
}

/// Normal form of `x` under the rules of `model`.
pub fn normalize(x: &TautExpr, model: &SurfaceModel) -> TautExpr {
    Normalizer::new(model).normalize(x)
}

pub fn normalize_with(x: &TautExpr, model: &SurfaceModel, strategy: Strategy<'_>) -> TautExpr {
    let mut n = Normalizer::new(model);
    match strategy {
        Strategy::Priority => n.normalize(x),
        Strategy::Random(rng) => n.normalize_random(x, rng),
    }
}
