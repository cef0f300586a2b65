//! Correspondences between powers of the surface.
//!
//! A correspondence `S^M -> S^N` is a class on `S^{M+N}`; factors `1..=M`
//! form the source block and `M+1..=M+N` the target block. Tensor products
//! concatenate source blocks and target blocks, so `γ_1 ⊗ ... ⊗ γ_n` of
//! self-correspondences of `S` puts `γ_i` on factors `(i, n+i)`.

use crate::error::{Error, Result};
use crate::ring::{Normalizer, TautExpr};
use crate::surface::SurfaceModel;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Correspondence {
    source: usize,
    target: usize,
    class: TautExpr,
}

impl Correspondence {
    pub fn new(source: usize, target: usize, class: TautExpr) -> Result<Self> {
        if class.arity() != source + target {
            return Err(Error::ArityMismatch {
                left: class.arity(),
                right: source + target,
            });
        }
        Ok(Correspondence {
            source,
            target,
            class,
        })
    }

    /// The diagonal of `S^m`, `Π_r D_{r, m+r}`.
    pub fn identity(m: usize) -> Self {
        let mut class = TautExpr::one(2 * m);
        for r in 1..=m {
            class = class
                .mul_raw(&TautExpr::diagonal(2 * m, r, m + r).expect("valid indices"))
                .expect("same arity");
        }
        Correspondence {
            source: m,
            target: m,
            class,
        }
    }

    pub fn zero(source: usize, target: usize) -> Self {
        Correspondence {
            source,
            target,
            class: TautExpr::zero(source + target),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn class(&self) -> &TautExpr {
        &self.class
    }

    pub fn is_zero(&self) -> bool {
        self.class.is_zero()
    }

    pub fn normalize(&self, model: &SurfaceModel) -> Self {
        Correspondence {
            class: self.class.normalize(model),
            ..self.clone()
        }
    }

    fn same_shape(&self, other: &Correspondence) -> Result<()> {
        if (self.source, self.target) != (other.source, other.target) {
            return Err(Error::ArityMismatch {
                left: self.class.arity(),
                right: other.class.arity(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Correspondence) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Correspondence {
            class: self.class.add(&other.class)?,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Correspondence) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Correspondence {
            class: self.class.sub(&other.class)?,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &crate::Q) -> Self {
        Correspondence {
            class: self.class.scale(c),
            ..self.clone()
        }
    }

    /// Image under the block swap `S^M × S^N -> S^N × S^M`.
    pub fn transpose(&self) -> Self {
        let (m, n) = (self.source, self.target);
        let perm: Vec<usize> = (1..=m + n)
            .map(|r| if r <= m { n + r } else { r - m })
            .collect();
        Correspondence {
            source: n,
            target: m,
            class: self.class.apply_permutation(&perm).expect("block swap is a permutation"),
        }
    }

    /// `γ_1 ⊗ ... ⊗ γ_k = Π_i (pr_{src_i, tgt_i})^* γ_i`.
    pub fn tensor(cs: &[Correspondence]) -> Result<Self> {
        let src: usize = cs.iter().map(|c| c.source).sum();
        let tgt: usize = cs.iter().map(|c| c.target).sum();
        let arity = src + tgt;
        let mut class = TautExpr::one(arity);
        let (mut so, mut to) = (0, 0);
        for c in cs {
            let map: Vec<usize> = (1..=c.source)
                .map(|r| so + r)
                .chain((1..=c.target).map(|t| src + to + t))
                .collect();
            class = class.mul_raw(&c.class.pullback(&map, arity)?)?;
            so += c.source;
            to += c.target;
        }
        Ok(Correspondence {
            source: src,
            target: tgt,
            class,
        })
    }

    /// `self ∘ f`: pull both classes to `S^a × S^b × S^c`, multiply, and
    /// integrate over the middle block.
    pub fn compose(&self, f: &Correspondence, model: &SurfaceModel) -> Result<Self> {
        self.compose_with(f, &mut Normalizer::new(model))
    }

    pub fn compose_with(&self, f: &Correspondence, n: &mut Normalizer<'_>) -> Result<Self> {
        let order: Vec<usize> = (f.source + 1..=f.source + f.target).collect();
        self.compose_in_order(f, &order, n)
    }

    /// Composition integrating the middle factors in the given order.
    pub fn compose_in_order(
        &self,
        f: &Correspondence,
        order: &[usize],
        n: &mut Normalizer<'_>,
    ) -> Result<Self> {
        if f.target != self.source {
            return Err(Error::ArityMismatch {
                left: f.target,
                right: self.source,
            });
        }
        let (a, b, c) = (f.source, f.target, self.target);
        let total = a + b + c;
        let f_map: Vec<usize> = (1..=a + b).collect();
        let g_map: Vec<usize> = (a + 1..=total).collect();
        let product = f
            .class
            .pullback(&f_map, total)?
            .mul_raw(&self.class.pullback(&g_map, total)?)?;
        let class = product.pushforward_factors(order, n)?;
        Correspondence::new(a, c, class)
    }

    /// `γ_*(x) = pr_{2*}(pr_1^* x · γ)`.
    pub fn act_on_cycle(&self, x: &TautExpr, model: &SurfaceModel) -> Result<TautExpr> {
        self.act_on_cycle_with(x, &mut Normalizer::new(model))
    }

    pub fn act_on_cycle_with(&self, x: &TautExpr, n: &mut Normalizer<'_>) -> Result<TautExpr> {
        if x.arity() != self.source {
            return Err(Error::ArityMismatch {
                left: x.arity(),
                right: self.source,
            });
        }
        let total = self.source + self.target;
        let map: Vec<usize> = (1..=self.source).collect();
        let product = x.pullback(&map, total)?.mul_raw(&self.class)?;
        // pushing factor 1 repeatedly integrates the whole source block
        let mut y = n.normalize(&product);
        for _ in 0..self.source {
            y = y.pushforward_with(1, n)?;
        }
        Ok(y)
    }

    /// Action of a self-correspondence of `S` on factor `r` of `x`, i.e. the
    /// action of `Δ ⊗ ... ⊗ γ ⊗ ... ⊗ Δ` with `γ` in slot `r`.
    pub fn act_on_factor(&self, x: &TautExpr, r: usize, n: &mut Normalizer<'_>) -> Result<TautExpr> {
        if self.source != 1 || self.target != 1 {
            return Err(Error::InvalidArgument(
                "factor-wise action needs a self-correspondence of S".into(),
            ));
        }
        let arity = x.arity();
        if r == 0 || r > arity {
            return Err(Error::IndexOutOfRange { index: r, arity });
        }
        let id: Vec<usize> = (1..=arity).collect();
        let lifted = x.pullback(&id, arity + 1)?;
        let gamma = self.class.pullback(&[r, arity + 1], arity + 1)?;
        let y = n.normalize(&lifted.mul_raw(&gamma)?);
        let y = y.pushforward_with(r, n)?;
        // the image sits on the last factor; move it back to slot r
        let perm: Vec<usize> = (1..=arity)
            .map(|s| match s.cmp(&r) {
                std::cmp::Ordering::Less => s,
                _ if s == arity => r,
                _ => s + 1,
            })
            .collect();
        y.apply_permutation(&perm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_correspondence;

    fn k3() -> SurfaceModel {
        SurfaceModel::k3()
    }

    fn corr(s: &str) -> Correspondence {
        parse_correspondence(s).unwrap()
    }

    #[test]
    fn transpose_swaps_point_projectors() {
        let p0 = corr("corr 1 1 : o(1)");
        let p4 = corr("corr 1 1 : o(2)");
        assert_eq!(p0.transpose(), p4);
        assert_eq!(p0.transpose().transpose(), p0);
        let d = Correspondence::identity(1);
        assert_eq!(d.transpose(), d);
    }

    #[test]
    fn tensor_interleaves_blocks() {
        let p0 = corr("corr 1 1 : o(1)");
        let t = Correspondence::tensor(&[p0.clone(), p0]).unwrap();
        assert_eq!(t.class(), &crate::dsl::parse_expr("o(1)*o(2)", Some(4)).unwrap());
        let id2 = Correspondence::tensor(&[Correspondence::identity(1), Correspondence::identity(1)])
            .unwrap();
        assert_eq!(id2, Correspondence::identity(2));
    }

    #[test]
    fn point_projectors_compose() {
        let m = k3();
        let p0 = corr("corr 1 1 : o(1)");
        let p4 = corr("corr 1 1 : o(2)");
        assert_eq!(p0.compose(&p0, &m).unwrap(), p0);
        assert!(p4.compose(&p0, &m).unwrap().is_zero());
        assert!(p0.compose(&p4, &m).unwrap().is_zero());
        assert_eq!(p4.compose(&p4, &m).unwrap(), p4);
    }

    #[test]
    fn identity_laws() {
        let m = k3();
        let c = corr("corr 1 1 : D(1,2)*h(1,1) + 3*o(1)*h(1,2) - k(2)").normalize(&m);
        let id = Correspondence::identity(1);
        assert_eq!(id.compose(&c, &m).unwrap(), c);
        assert_eq!(c.compose(&id, &m).unwrap(), c);
    }

    #[test]
    fn act_on_cycle_conventions() {
        let m = k3();
        let p4 = corr("corr 1 1 : o(2)");
        let x = crate::dsl::parse_expr("3*o(1) + D(1,2)", Some(1));
        assert!(x.is_err());
        let x = crate::dsl::parse_expr("3*o(1) + h(1,1)*h(1,1)", None).unwrap();
        // degree 3 + 2
        assert_eq!(
            p4.act_on_cycle(&x, &m).unwrap(),
            crate::dsl::parse_expr("5*o(1)", None).unwrap()
        );
        let p2 = corr("corr 1 1 : D(1,2) - o(1) - o(2)");
        let o = crate::dsl::parse_expr("o(1)", None).unwrap();
        assert!(p2.act_on_cycle(&o, &m).unwrap().is_zero());
        assert!(p2.act_on_cycle(&TautExpr::one(2), &m).is_err());
    }

    #[test]
    fn small_diagonal_acts_as_product() {
        let m = k3();
        let mult = Correspondence::new(
            2,
            1,
            crate::ring::small_diagonal(3, &[1, 2, 3], &m).unwrap(),
        )
        .unwrap();
        let hh = crate::dsl::parse_expr("h(1,1)*h(1,2)", None).unwrap();
        assert_eq!(
            mult.act_on_cycle(&hh, &m).unwrap(),
            crate::dsl::parse_expr("2*o(1)", None).unwrap()
        );
        let oo = crate::dsl::parse_expr("o(1)*o(2)", None).unwrap();
        assert!(mult.act_on_cycle(&oo, &m).unwrap().is_zero());
        let one_h = crate::dsl::parse_expr("arity 2: h(1,2)", None).unwrap();
        assert_eq!(
            mult.act_on_cycle(&one_h, &m).unwrap(),
            crate::dsl::parse_expr("h(1,1)", None).unwrap()
        );
    }

    #[test]
    fn factor_action_matches_tensor_action() {
        let m = k3();
        let mut n = Normalizer::new(&m);
        let p2 = corr("corr 1 1 : D(1,2) - o(1) - o(2)");
        let x = crate::dsl::parse_expr("D(1,2)*h(1,3) + o(2)*D(1,3) - h(1,1)*h(1,2)*o(3)", None)
            .unwrap()
            .normalize(&m);
        let via_factor = p2.act_on_factor(&x, 2, &mut n).unwrap();
        let id = Correspondence::identity(1);
        let full = Correspondence::tensor(&[id.clone(), p2, id]).unwrap();
        assert_eq!(via_factor, full.act_on_cycle(&x, &m).unwrap());
    }
}
