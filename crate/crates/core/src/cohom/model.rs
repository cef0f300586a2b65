use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{q, q_frac, Q};
use crate::surface::{Mode, SurfaceModel};

/// A class as a sparse combination of basis indices.
pub type Class = Vec<(usize, Q)>;

/// Graded cohomology ring `H^*(S, Q)` with a homogeneous basis.
///
/// K3 and generic models have basis `1, e_1, ..., e_b, pt`. The abelian
/// model is the exterior algebra on `e_1..e_4` (degree one) with
/// `∫ e_1 e_2 e_3 e_4 = 1`; its basis is the 16 wedge monomials.
#[derive(Debug, Clone)]
pub struct CohomModel {
    mode: Mode,
    labels: Vec<String>,
    degrees: Vec<usize>,
    // product[i][j]: e_i · e_j
    product: Vec<Vec<Class>>,
    top: usize,
    pairing: Matrix,
    diagonal: Vec<(usize, usize, Q)>,
    point: Class,
    divisors: Vec<Class>,
    canonical: Class,
    chi: i64,
}

impl CohomModel {
    pub fn for_surface(model: &SurfaceModel) -> Result<Self> {
        match model.mode() {
            Mode::K3 => Self::even(model, 22),
            Mode::GenericB1Zero => {
                let b2 = model.chi_top() - 2;
                if b2 < 0 {
                    return Err(Error::InvalidModel(
                        "generic mode needs chi_top >= 2 (b_1 = 0)".into(),
                    ));
                }
                Self::even(model, b2 as usize)
            }
            Mode::Abelian => Self::abelian(model),
        }
    }

    pub fn k3() -> Self {
        Self::for_surface(&SurfaceModel::k3()).expect("default K3 model")
    }

    pub fn abelian_default() -> Self {
        Self::for_surface(&SurfaceModel::abelian()).expect("default abelian model")
    }

    fn even(model: &SurfaceModel, b2: usize) -> Result<Self> {
        let rho = model.ns_rank();
        let k_slots = match (model.has_canonical(), model.canonical_self_intersection()) {
            (false, _) => 0,
            (true, 0) => 2,
            (true, _) => 1,
        };
        if rho + k_slots > b2 {
            return Err(Error::InvalidModel(format!(
                "b_2 = {b2} too small for {rho} divisors and the canonical class"
            )));
        }
        let n = b2 + 2;
        let top = n - 1;
        let mut form = vec![vec![Q::zero(); b2]; b2];
        for a in 0..rho {
            for b in 0..rho {
                form[a][b] = model.gram()[a][b].clone();
            }
        }
        for i in rho..b2 {
            form[i][i] = -Q::one();
        }
        let mut canonical = Vec::new();
        match k_slots {
            1 => {
                form[rho][rho] = q(model.canonical_self_intersection());
                canonical.push((rho + 1, Q::one()));
            }
            2 => {
                form[rho][rho] = Q::one();
                canonical.push((rho + 1, Q::one()));
                canonical.push((rho + 2, Q::one()));
            }
            _ => {}
        }
        let mut labels = vec!["1".to_string()];
        labels.extend((1..=b2).map(|i| format!("e{i}")));
        labels.push("pt".into());
        let mut degrees = vec![0];
        degrees.extend(std::iter::repeat(2).take(b2));
        degrees.push(4);
        let mut product = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            product[0][i] = vec![(i, Q::one())];
            product[i][0] = vec![(i, Q::one())];
        }
        for a in 0..b2 {
            for b in 0..b2 {
                if !form[a][b].is_zero() {
                    product[a + 1][b + 1] = vec![(top, form[a][b].clone())];
                }
            }
        }
        let divisors = (1..=rho).map(|a| vec![(a, Q::one())]).collect();
        Self::finish(
            model.mode(),
            labels,
            degrees,
            product,
            top,
            divisors,
            canonical,
            model.chi_top(),
        )
    }

    fn abelian(model: &SurfaceModel) -> Result<Self> {
        // basis: subsets of {1,2,3,4} ordered by size, then lexicographically
        let mut masks: Vec<u8> = (0u8..16).collect();
        masks.sort_by_key(|m| (m.count_ones(), bit_list(*m)));
        let index_of = |m: u8| masks.iter().position(|x| *x == m).unwrap();
        let labels: Vec<String> = masks
            .iter()
            .map(|&m| {
                if m == 0 {
                    "1".into()
                } else {
                    format!("e{}", bit_list(m).iter().map(|b| b.to_string()).collect::<String>())
                }
            })
            .collect();
        let degrees: Vec<usize> = masks.iter().map(|m| m.count_ones() as usize).collect();
        let n = masks.len();
        let mut product = vec![vec![Vec::new(); n]; n];
        for (i, &a) in masks.iter().enumerate() {
            for (j, &b) in masks.iter().enumerate() {
                if a & b != 0 {
                    continue;
                }
                // sign of sorting the concatenation a ++ b
                let mut inversions = 0;
                for x in bit_list(a) {
                    for y in bit_list(b) {
                        if x > y {
                            inversions += 1;
                        }
                    }
                }
                let sign = if inversions % 2 == 0 { Q::one() } else { -Q::one() };
                product[i][j] = vec![(index_of(a | b), sign)];
            }
        }
        let top = index_of(0b1111);

        // hyperbolic planes (f, g) in degree two with f·g = 1
        let e = |bits: &[u8]| index_of(bits.iter().fold(0u8, |m, b| m | (1 << (b - 1))));
        let planes: [((usize, Q), (usize, Q)); 3] = [
            ((e(&[1, 2]), q(1)), (e(&[3, 4]), q(1))),
            ((e(&[1, 3]), q(1)), (e(&[2, 4]), q(-1))),
            ((e(&[1, 4]), q(1)), (e(&[2, 3]), q(1))),
        ];
        let divisors = if model.ns_rank() == 0 {
            Vec::new()
        } else {
            let (_, diag, coords) = linalg::orthogonal_basis(model.gram())
                .ok_or_else(|| Error::InvalidModel("degenerate gram".into()))?;
            // v_i = f_i + (d_i / 2) g_i has square d_i
            let vs: Vec<Class> = diag
                .iter()
                .zip(&planes)
                .map(|(d, ((fi, fc), (gi, gc)))| {
                    vec![(*fi, fc.clone()), (*gi, gc * d * q_frac(1, 2))]
                })
                .collect();
            coords
                .iter()
                .map(|row| {
                    let mut acc: Class = Vec::new();
                    for (c, v) in row.iter().zip(&vs) {
                        for (idx, x) in v {
                            add_to(&mut acc, *idx, c * x);
                        }
                    }
                    acc
                })
                .collect()
        };
        Self::finish(
            Mode::Abelian,
            labels,
            degrees,
            product,
            top,
            divisors,
            Vec::new(),
            0,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        mode: Mode,
        labels: Vec<String>,
        degrees: Vec<usize>,
        product: Vec<Vec<Class>>,
        top: usize,
        divisors: Vec<Class>,
        canonical: Class,
        chi: i64,
    ) -> Result<Self> {
        let n = labels.len();
        let pairing: Matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        product[i][j]
                            .iter()
                            .filter(|(k, _)| *k == top)
                            .map(|(_, c)| c.clone())
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let inv = linalg::inverse(&pairing)
            .ok_or_else(|| Error::InvalidModel("Poincaré pairing is degenerate".into()))?;
        let mut diagonal = Vec::new();
        for (i, row) in inv.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    diagonal.push((i, j, c.clone()));
                }
            }
        }
        Ok(CohomModel {
            mode,
            labels,
            degrees,
            product,
            top,
            pairing,
            diagonal,
            point: vec![(top, Q::one())],
            divisors,
            canonical,
            chi,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn unit(&self) -> usize {
        0
    }

    pub fn chi_top(&self) -> i64 {
        self.chi
    }

    pub fn product(&self, i: usize, j: usize) -> &Class {
        &self.product[i][j]
    }

    /// `∫ e_i e_j`.
    pub fn pairing(&self) -> &Matrix {
        &self.pairing
    }

    /// Künneth components `(i, j, c)` of the diagonal class: `Σ c e_i ⊗ e_j`.
    pub fn diagonal_components(&self) -> &[(usize, usize, Q)] {
        &self.diagonal
    }

    pub fn point_class(&self) -> &Class {
        &self.point
    }

    pub fn divisor_class(&self, a: usize) -> Result<&Class> {
        self.divisors.get(a.wrapping_sub(1)).ok_or(Error::DivisorOutOfRange {
            index: a,
            rank: self.divisors.len(),
        })
    }

    pub fn ns_rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn canonical_class(&self) -> &Class {
        &self.canonical
    }

    /// Betti numbers `b_0..b_4`.
    pub fn betti(&self) -> [usize; 5] {
        let mut b = [0; 5];
        for &d in &self.degrees {
            b[d] += 1;
        }
        b
    }

    /// Product of two classes.
    pub fn mul_class(&self, x: &Class, y: &Class) -> Class {
        let mut acc = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in &self.product[*i][*j] {
                    add_to(&mut acc, *k, a * b * c);
                }
            }
        }
        acc
    }

    /// `[n]^*` for the abelian model.
    pub fn multiplication_by_n(&self, n: i64) -> Result<MultiplicationByN> {
        if self.mode != Mode::Abelian {
            return Err(Error::WrongMode(
                "multiplication by n is only defined on the abelian model",
            ));
        }
        MultiplicationByN::new(self, n)
    }
}

fn bit_list(m: u8) -> Vec<u8> {
    (1..=4).filter(|b| m & (1 << (b - 1)) != 0).collect()
}

pub(crate) fn add_to(acc: &mut Class, idx: usize, c: Q) {
    if c.is_zero() {
        return;
    }
    if let Some(pos) = acc.iter().position(|(i, _)| *i == idx) {
        acc[pos].1 += c;
        if acc[pos].1.is_zero() {
            acc.remove(pos);
        }
    } else {
        acc.push((idx, c));
    }
}

/// The pullback `[n]^*` along multiplication by `n` on an abelian surface,
/// as the ring endomorphism scaling each degree-one generator by `n`.
#[derive(Debug, Clone)]
pub struct MultiplicationByN {
    n: i64,
    images: Vec<Class>,
}

impl MultiplicationByN {
    fn new(model: &CohomModel, n: i64) -> Result<Self> {
        let mut images: Vec<Class> = vec![Vec::new(); model.dim()];
        images[model.unit()] = vec![(model.unit(), Q::one())];
        // every basis monomial e_S is the ordered product of its generators
        let generators: Vec<usize> = (0..model.dim()).filter(|&i| model.degree(i) == 1).collect();
        for i in 0..model.dim() {
            if model.degree(i) == 1 {
                images[i] = vec![(i, q(n))];
            }
        }
        let mut order: Vec<usize> = (0..model.dim()).collect();
        order.sort_by_key(|&i| model.degree(i));
        for i in order {
            if model.degree(i) < 2 {
                continue;
            }
            // find g, rest with e_g · e_rest = ± e_i, rest already mapped
            let mut found = false;
            'outer: for &g in &generators {
                for rest in 0..model.dim() {
                    if model.degree(rest) + 1 != model.degree(i) {
                        continue;
                    }
                    if let [(k, c)] = model.product(g, rest).as_slice() {
                        if *k == i {
                            let img = model.mul_class(&images[g], &images[rest]);
                            images[i] = img.into_iter().map(|(k, x)| (k, x / c)).collect();
                            found = true;
                            break 'outer;
                        }
                    }
                }
            }
            if !found {
                return Err(Error::InvalidModel(format!(
                    "basis element {} is not a product of generators",
                    model.label(i)
                )));
            }
        }
        Ok(MultiplicationByN { n, images })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn image(&self, basis: usize) -> &Class {
        &self.images[basis]
    }

    pub fn apply(&self, x: &Class) -> Class {
        let mut acc = Vec::new();
        for (i, a) in x {
            for (k, b) in &self.images[*i] {
                add_to(&mut acc, *k, a * b);
            }
        }
        acc
    }
}
