//! Poincaré polynomials of symmetric products and of `S^[n]`.
//!
//! Two independent paths: the cycle-index (Macdonald) computation summed
//! over the formal decomposition, and Göttsche's product formula.

use num_traits::{One, Zero};

use super::motive::FormalMotive;
use super::partition::{integer_partitions, multiplicities};
use crate::cohom::CohomModel;
use crate::error::{Error, Result};
use crate::rational::{q, to_i64, Q};

/// Coefficients indexed by degree.
pub type Poly = Vec<i64>;

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn to_poly(p: Vec<Q>) -> Poly {
    let mut out: Poly = p
        .iter()
        .map(|c| to_i64(c).expect("Betti numbers are integers"))
        .collect();
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn factorial(k: usize) -> Q {
    (1..=k as i64).fold(Q::one(), |acc, i| acc * q(i))
}

/// Graded dimension of the `S_k`-invariants of the signed tensor power
/// `H^{⊗k}`, via the cycle index of `S_k`.
pub fn symmetric_power_poincare(betti: &[usize; 5], k: usize) -> Poly {
    if k == 0 {
        return vec![1];
    }
    let mut total = vec![Q::zero(); 4 * k + 1];
    for lambda in integer_partitions(k) {
        // z_λ = Π ℓ^{m_ℓ} m_ℓ!
        let z = multiplicities(&lambda)
            .iter()
            .fold(Q::one(), |acc, (&l, &m)| acc * factorial(m) * q(l as i64).pow(m as i32));
        let mut term = vec![Q::one()];
        for &l in &lambda {
            let mut p = vec![Q::zero(); 4 * l + 1];
            for (i, &b) in betti.iter().enumerate() {
                let sign = if i * (l - 1) % 2 == 1 { -1 } else { 1 };
                p[i * l] += q(sign * b as i64);
            }
            term = poly_mul(&term, &p);
        }
        for (d, c) in term.into_iter().enumerate() {
            total[d] += c / &z;
        }
    }
    to_poly(total)
}

/// Poincaré polynomial of `S^(μ)` for a partition shape.
pub fn summand_poincare(shape: &[usize], betti: &[usize; 5]) -> Poly {
    multiplicities(shape).values().fold(vec![1], |acc, &k| {
        let p: Vec<Q> = symmetric_power_poincare(betti, k).iter().map(|&c| q(c)).collect();
        let a: Vec<Q> = acc.iter().map(|&c| q(c)).collect();
        to_poly(poly_mul(&a, &p))
    })
}

fn poincare_from_betti(fm: &FormalMotive, betti: &[usize; 5]) -> Poly {
    let mut out = vec![0i64; 4 * fm.n + 1];
    for s in &fm.summands {
        let shift = 2 * (fm.n - s.length());
        for (d, c) in summand_poincare(&s.shape, betti).into_iter().enumerate() {
            out[d + shift] += c;
        }
    }
    out
}

/// `Σ_μ t^{2(n-l(μ))} P(S^(μ), t)`.
pub fn poincare_polynomial(fm: &FormalMotive, model: &CohomModel) -> Poly {
    poincare_from_betti(fm, &model.betti())
}

/// `dim H^i(S^[n])` read off the decomposition.
pub fn hilb_ck_dimensions(n: usize, i: usize, model: &CohomModel) -> Result<i64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if i > 4 * n {
        return Err(Error::IndexOutOfRange {
            index: i,
            arity: 4 * n,
        });
    }
    let p = poincare_polynomial(&super::dcm_decomposition(n), model);
    Ok(p.get(i).copied().unwrap_or(0))
}

/// `χ(S^[n]) = Σ_i (-1)^i dim H^i(S^[n])`.
pub fn euler_characteristic(n: usize, model: &CohomModel) -> i64 {
    poincare_polynomial(&super::dcm_decomposition(n), model)
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 0 { *c } else { -c })
        .sum()
}

/// Coefficient of `x^j` in `(1 - εx)^{-e}`.
fn binomial_series(e: i64, eps: i64, j: usize) -> Q {
    let mut c = Q::one();
    for r in 0..j as i64 {
        c = c * q(e + r) / q(r + 1);
    }
    if eps < 0 && j % 2 == 1 {
        -c
    } else {
        c
    }
}

/// `χ(S^[n])` for `n = 1..=n_max` from `Π_{m≥1} (1 - q^m)^{-χ}`.
pub fn gottsche_euler(n_max: usize, chi_top: i64) -> Vec<i64> {
    let mut series = vec![Q::zero(); n_max + 1];
    series[0] = Q::one();
    for m in 1..=n_max {
        let factor: Vec<Q> = (0..=n_max)
            .map(|d| {
                if d % m == 0 {
                    binomial_series(chi_top, 1, d / m)
                } else {
                    Q::zero()
                }
            })
            .collect();
        series = poly_mul(&series, &factor);
        series.truncate(n_max + 1);
    }
    series[1..]
        .iter()
        .map(|c| to_i64(c).expect("integral series"))
        .collect()
}

/// Poincaré polynomials of `S^[n]` for `n = 1..=n_max` from
/// `Π_{k≥1} Π_i (1 - (-1)^i z^{2k-2+i} t^k)^{-(-1)^i b_i}`.
pub fn gottsche_poincare(n_max: usize, betti: &[usize; 5]) -> Vec<Poly> {
    let zdeg = 4 * n_max + 1;
    // series[t] is a polynomial in z
    let mut series = vec![vec![Q::zero(); zdeg]; n_max + 1];
    series[0][0] = Q::one();
    for k in 1..=n_max {
        for (i, &b) in betti.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let eps = if i % 2 == 0 { 1 } else { -1 };
            let e = eps * b as i64;
            let d = 2 * k - 2 + i;
            let mut next = vec![vec![Q::zero(); zdeg]; n_max + 1];
            for (t, row) in series.iter().enumerate() {
                for (zd, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut j = 0;
                    while t + k * j <= n_max && zd + d * j < zdeg {
                        next[t + k * j][zd + d * j] += c * binomial_series(e, eps, j);
                        j += 1;
                    }
                }
            }
            series = next;
        }
    }
    series
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(n, row)| {
            let mut p = to_poly(row);
            p.resize(4 * n + 1, 0);
            p
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilb::dcm_decomposition;

    const K3: [usize; 5] = [1, 0, 22, 0, 1];
    const ABELIAN: [usize; 5] = [1, 4, 6, 4, 1];

    #[test]
    fn symmetric_square_of_k3() {
        assert_eq!(symmetric_power_poincare(&K3, 2), vec![1, 0, 22, 0, 254, 0, 22, 0, 1]);
        assert_eq!(symmetric_power_poincare(&K3, 1), K3.iter().map(|&b| b as i64).collect::<Poly>());
    }

    #[test]
    fn abelian_symmetric_square_degree_one() {
        let p = symmetric_power_poincare(&ABELIAN, 2);
        assert_eq!(p[1], 4);
        // Sym^2 of the even part, Λ^2 of the odd part, and their product: 36 + 28 + 64
        assert_eq!(p.iter().sum::<i64>(), 128);
    }

    #[test]
    fn hilbert_square_of_k3() {
        let p = poincare_from_betti(&dcm_decomposition(2), &K3);
        assert_eq!(p, vec![1, 0, 23, 0, 276, 0, 23, 0, 1]);
    }

    #[test]
    fn euler_series() {
        assert_eq!(gottsche_euler(5, 24), vec![24, 324, 3200, 25650, 176256]);
        assert_eq!(gottsche_euler(5, 0), vec![0; 5]);
        assert_eq!(gottsche_euler(1, 7), vec![7]);
    }

    #[test]
    fn refined_formula_matches_decomposition() {
        for betti in [K3, ABELIAN, [1, 0, 10, 0, 1]] {
            let refined = gottsche_poincare(4, &betti);
            for n in 1..=4 {
                assert_eq!(refined[n - 1], poincare_from_betti(&dcm_decomposition(n), &betti), "n = {n}");
            }
        }
    }
}
