//! Dense rational linear algebra on small matrices.

use num_traits::{One, Zero};

use crate::rational::Q;

pub type Matrix = Vec<Vec<Q>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn is_symmetric(m: &Matrix) -> bool {
    let n = m.len();
    m.iter().all(|row| row.len() == n)
        && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

pub fn determinant(m: &Matrix) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Q::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let p = a[col][col].clone();
        for c in 0..n {
            a[col][c] /= &p;
            inv[col][c] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
                let t = &f * &inv[col][c];
                inv[r][c] -= t;
            }
        }
    }
    Some(inv)
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = Q::zero();
                    for l in 0..k {
                        if !a[i][l].is_zero() && !b[l][j].is_zero() {
                            s += &a[i][l] * &b[l][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Congruence diagonalisation of a nondegenerate symmetric form.
///
/// Returns `(basis, diag)` where the rows of `basis` are vectors `v_i` (in the
/// coordinates of `form`) with `v_i . v_j = 0` for `i != j` and
/// `v_i . v_i = diag[i] != 0`, together with the change of basis `coords`
/// satisfying `e_a = sum_i coords[a][i] v_i`.
pub fn orthogonal_basis(form: &Matrix) -> Option<(Matrix, Vec<Q>, Matrix)> {
    let n = form.len();
    let pair = |x: &[Q], y: &[Q]| -> Q {
        let mut s = Q::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !y[j].is_zero() && !form[i][j].is_zero() {
                    s += &x[i] * &form[i][j] * &y[j];
                }
            }
        }
        s
    };
    let mut remaining: Vec<Vec<Q>> = identity(n);
    let mut basis: Matrix = Vec::new();
    let mut diag = Vec::new();
    while !remaining.is_empty() {
        // pick an anisotropic vector among the remaining ones or a pairwise sum
        let mut chosen = None;
        'search: for i in 0..remaining.len() {
            if !pair(&remaining[i], &remaining[i]).is_zero() {
                chosen = Some(remaining[i].clone());
                break;
            }
            for j in i + 1..remaining.len() {
                if !pair(&remaining[i], &remaining[j]).is_zero() {
                    let v: Vec<Q> = remaining[i]
                        .iter()
                        .zip(&remaining[j])
                        .map(|(a, b)| a + b)
                        .collect();
                    chosen = Some(v);
                    break 'search;
                }
            }
        }
        let v = chosen?;
        let vv = pair(&v, &v);
        // project the remaining vectors onto v-perp and drop a dependent one
        let mut next: Vec<Vec<Q>> = remaining
            .iter()
            .map(|w| {
                let c = pair(w, &v) / &vv;
                w.iter().zip(&v).map(|(a, b)| a - &c * b).collect::<Vec<Q>>()
            })
            .collect();
        next = independent_rows(next);
        next.truncate(n - basis.len() - 1);
        basis.push(v);
        diag.push(vv);
        remaining = next;
    }
    let coords = inverse(&basis)?;
    Some((basis, diag, coords))
}

fn independent_rows(rows: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let mut kept: Vec<Vec<Q>> = Vec::new();
    let mut echelon: Vec<(usize, Vec<Q>)> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for (p, e) in &echelon {
            if !r[*p].is_zero() {
                let f = &r[*p] / &e[*p];
                for (x, y) in r.iter_mut().zip(e) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            echelon.push((p, r));
            kept.push(row);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(determinant(&a), q(5));
        let inv = inverse(&a).unwrap();
        assert_eq!(mul(&a, &inv), identity(2));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn diagonalises_hyperbolic_plane() {
        let h = m(&[&[0, 1], &[1, 0]]);
        let (basis, diag, coords) = orthogonal_basis(&h).unwrap();
        assert_eq!(diag.len(), 2);
        assert!(diag.iter().all(|d| !d.is_zero()));
        let g = mul(&mul(&basis, &h), &transpose(&basis));
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { diag[i].clone() } else { Q::zero() };
                assert_eq!(g[i][j], expect);
            }
        }
        assert_eq!(mul(&coords, &basis), identity(2));
    }
}
