#![allow(dead_code)]

use mck_core::rational::q_frac;
use mck_core::{Generator, SurfaceModel, TautExpr};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// K3 model with a rank-2 Néron–Severi lattice, so mixed pairings occur.
pub fn k3_rank2() -> SurfaceModel {
    SurfaceModel::k3_with_gram(vec![
        vec![q_frac(2, 1), q_frac(1, 1)],
        vec![q_frac(1, 1), q_frac(-2, 1)],
    ])
    .unwrap()
}

pub fn random_generator(rng: &mut StdRng, arity: usize, model: &SurfaceModel) -> Generator {
    loop {
        let r = rng.gen_range(1..=arity);
        let g = match rng.gen_range(0..9) {
            0 | 1 => Generator::Point(r),
            2 | 3 if model.ns_rank() > 0 => Generator::Divisor(rng.gen_range(1..=model.ns_rank()), r),
            4 => Generator::Canonical(r),
            5 => Generator::SecondChern(r),
            6..=8 if arity >= 2 => {
                let mut s = rng.gen_range(1..=arity);
                while s == r {
                    s = rng.gen_range(1..=arity);
                }
                Generator::diagonal(r, s).unwrap()
            }
            _ => continue,
        };
        return g;
    }
}

pub fn random_coefficient(rng: &mut StdRng) -> mck_core::Q {
    let mut n = rng.gen_range(-4..=4);
    if n == 0 {
        n = 1;
    }
    q_frac(n, rng.gen_range(1..=3))
}

/// Sum of `terms` monomials with up to `max_gens` generators each.
pub fn random_expr(
    rng: &mut StdRng,
    arity: usize,
    max_gens: usize,
    terms: usize,
    model: &SurfaceModel,
) -> TautExpr {
    let mut x = TautExpr::zero(arity);
    for _ in 0..terms {
        let len = rng.gen_range(1..=max_gens);
        let gens: Vec<Generator> = (0..len).map(|_| random_generator(rng, arity, model)).collect();
        let c = random_coefficient(rng);
        x = x
            .add(&TautExpr::from_terms(arity, vec![(gens, c)]).unwrap())
            .unwrap();
    }
    x
}

/// Random expression all of whose monomials have codimension `codim`.
pub fn random_homogeneous(
    rng: &mut StdRng,
    arity: usize,
    codim: usize,
    terms: usize,
    model: &SurfaceModel,
) -> TautExpr {
    let mut x = TautExpr::zero(arity);
    for _ in 0..terms {
        let mut gens = Vec::new();
        let mut left = codim;
        while left > 0 {
            let g = random_generator(rng, arity, model);
            if g.codim() <= left {
                left -= g.codim();
                gens.push(g);
            }
        }
        let c = random_coefficient(rng);
        x = x
            .add(&TautExpr::from_terms(arity, vec![(gens, c)]).unwrap())
            .unwrap();
    }
    x
}
