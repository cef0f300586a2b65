mod common;

use mck_core::dsl::parse_expr;
use mck_core::rational::{q, q_frac};
use mck_core::ring::rewrite::{Rule, RuleSet};
use mck_core::ring::{normalize_with, small_diagonal, Normalizer, Strategy};
use mck_core::{Error, SurfaceModel, TautExpr};
use proptest::prelude::*;

use common::{k3_rank2, random_expr, rng};

fn k3() -> SurfaceModel {
    SurfaceModel::k3()
}

fn e(s: &str, arity: usize) -> TautExpr {
    parse_expr(s, Some(arity)).unwrap()
}

fn nf(s: &str, arity: usize) -> TautExpr {
    e(s, arity).normalize(&k3())
}

#[test]
fn addition() {
    assert!(e("o(1) - o(1)", 1).is_zero());
    assert_eq!(e("o(1) + o(2)", 2).len(), 2);
    assert_eq!(e("1/2*D(1,2) + 1/2*D(1,2)", 2), e("D(1,2)", 2));
    assert!(matches!(
        e("o(1)", 1).add(&e("o(1)", 2)),
        Err(Error::ArityMismatch { .. })
    ));
}

#[test]
fn multiplication() {
    let m = k3();
    assert_eq!(e("D(1,2)", 2).multiply(&e("o(1)", 2), &m).unwrap(), e("o(1)*o(2)", 2));
    assert_eq!(e("D(1,2)", 2).multiply(&e("D(1,2)", 2), &m).unwrap(), e("24*o(1)*o(2)", 2));
    assert!(e("o(1)", 1).multiply(&e("o(1)", 1), &m).unwrap().is_zero());
    let p = e("h(1,1) + h(1,2)", 2).multiply(&e("D(1,2)", 2), &m).unwrap();
    assert_eq!(p.homogeneous_codim().unwrap(), Some(3));
}

#[test]
fn normal_forms() {
    assert_eq!(
        nf("D(1,2)*D(1,3)", 3),
        e("D(1,2)*o(3) + D(1,3)*o(2) + D(2,3)*o(1) - o(1)*o(2) - o(1)*o(3) - o(2)*o(3)", 3)
    );
    assert_eq!(nf("c(1)*D(1,2)", 2), e("24*o(1)*o(2)", 2));
    assert!(nf("k(1)*D(1,2)", 2).is_zero());
    assert_eq!(nf("h(1,1)^2", 1), e("2*o(1)", 1));
    assert!(nf("h(1,1)*o(1)", 1).is_zero());
    assert_eq!(nf("D(1,2)*h(1,1)", 2), e("h(1,1)*o(2) + o(1)*h(1,2)", 2));
}

#[test]
fn r5_follows_from_r7_and_pushforward() {
    let model = k3_rank2();
    let rules = RuleSet::for_model(&model).without(Rule::DiagonalDivisor);
    let mut n = Normalizer::with_rules(&model, rules);
    for a in 1..=2 {
        let lifted = e(&format!("D(1,2)*D(1,3)*h({a},3)"), 3);
        let derived = n.normalize(&lifted).pushforward_with(3, &mut n).unwrap();
        assert_eq!(derived, e(&format!("h({a},1)*o(2) + o(1)*h({a},2)"), 2));
        // without R5 the left side is already normal
        assert!(n.is_normal(e(&format!("D(1,2)*h({a},1)"), 2).terms().next().unwrap().0, 2));
    }
}

#[test]
fn pullback_examples() {
    assert_eq!(e("o(1)", 1).pullback(&[3], 3).unwrap(), e("o(3)", 3));
    assert_eq!(e("D(1,2)", 2).pullback(&[2, 5], 6).unwrap(), e("D(2,5)", 6));
    assert_eq!(TautExpr::one(2).pullback(&[4, 1], 4).unwrap(), TautExpr::one(4));
    assert_eq!(e("D(1,2)", 2).pullback(&[1, 1], 3), Err(Error::NonInjective));
}

#[test]
fn pushforward_examples() {
    let m = k3();
    assert_eq!(e("D(1,2)*o(2)", 2).pushforward(2, &m).unwrap(), e("o(1)", 1));
    assert_eq!(e("o(2)", 2).pushforward(2, &m).unwrap(), TautExpr::one(1));
    assert!(e("k(2)", 2).pushforward(2, &m).unwrap().is_zero());
    assert!(TautExpr::one(2).pushforward(2, &m).unwrap().is_zero());
    assert_eq!(e("c(2)", 2).pushforward(2, &m).unwrap(), TautExpr::constant(1, q(24)));
    assert!(e("o(1)", 1).pushforward(2, &m).is_err());
}

#[test]
fn projection_formula_sanity() {
    let model = k3_rank2();
    let mut r = rng(7);
    for _ in 0..200 {
        let x = random_expr(&mut r, 2, 4, 2, &model);
        let lifted = x.pullback(&[1, 2], 3).unwrap().mul_raw(&e("o(3)", 3)).unwrap();
        assert_eq!(lifted.normalize(&model).pushforward(3, &model).unwrap(), x.normalize(&model));
    }
}

#[test]
fn permutations() {
    assert_eq!(e("D(1,2)", 2).apply_permutation(&[2, 1]).unwrap(), e("D(1,2)", 2));
    assert_eq!(e("o(1)", 2).apply_permutation(&[2, 1]).unwrap(), e("o(2)", 2));
    assert_eq!(
        e("h(1,1)*o(2)", 2).apply_permutation(&[2, 1]).unwrap(),
        e("h(1,2)*o(1)", 2)
    );
    assert!(e("o(1)", 2).apply_permutation(&[1, 1]).is_err());
}

#[test]
fn symmetrization() {
    let s2 = vec![vec![1, 2], vec![2, 1]];
    assert_eq!(e("o(1)", 2).symmetrize(&s2).unwrap(), e("1/2*o(1) + 1/2*o(2)", 2));
    assert_eq!(e("D(1,2)", 2).symmetrize(&s2).unwrap(), e("D(1,2)", 2));
    let x = e("h(1,1)*o(2) + 3*D(1,2)*o(1)", 2);
    let once = x.symmetrize(&s2).unwrap();
    assert_eq!(once.symmetrize(&s2).unwrap(), once);
    assert_eq!(x.symmetrize(&[]), Err(Error::EmptyGroup));
}

#[test]
fn small_diagonals() {
    let m = k3();
    assert_eq!(small_diagonal(2, &[1, 2], &m).unwrap(), e("D(1,2)", 2));
    assert_eq!(small_diagonal(3, &[1, 2, 3], &m).unwrap(), nf("D(1,2)*D(1,3)", 3));
    assert_eq!(small_diagonal(3, &[1, 2, 2], &m), Err(Error::RepeatedIndex(2)));
    let d = small_diagonal(3, &[1, 2, 3], &m).unwrap();
    assert_eq!(d.mul_raw(&e("D(2,3)", 3)).unwrap().degree(&m).unwrap(), q(24));
}

#[test]
fn normal_monomials_have_matched_diagonals() {
    let model = k3_rank2();
    let mut r = rng(3);
    for _ in 0..300 {
        let x = random_expr(&mut r, 4, 6, 2, &model).normalize(&model);
        for (m, _) in x.terms() {
            let mut used = std::collections::BTreeSet::new();
            for (a, b) in m.diagonals() {
                assert!(used.insert(a) && used.insert(b), "{m}");
            }
            for f in 1..=4 {
                assert!(m.decoration_codim(f) <= 2, "{m}");
            }
        }
    }
}

#[test]
fn abelian_mode_only_removes_chern_and_canonical_classes() {
    let a = SurfaceModel::abelian();
    assert!(e("c(1)*D(1,2)", 2).normalize(&a).is_zero());
    assert!(e("k(1)", 1).normalize(&a).is_zero());
    assert_eq!(e("D(1,2)*D(1,3)", 3).normalize(&a), e("D(1,2)*D(1,3)", 3));
    assert_eq!(e("D(1,2)*o(1)", 2).normalize(&a), e("D(1,2)*o(1)", 2));
}

#[test]
fn generic_mode_keeps_canonical_class() {
    let g = SurfaceModel::generic(12, 0, vec![vec![q(-2)]]).unwrap();
    assert_eq!(e("c(1)", 1).normalize(&g), e("12*o(1)", 1));
    assert_eq!(e("D(1,2)*k(1)", 2).normalize(&g), e("k(1)*o(2) + o(1)*k(2)", 2));
    assert!(e("k(1)*h(1,1)", 1).normalize(&g).is_zero());
    let g3 = SurfaceModel::generic(10, 2, vec![vec![q_frac(1, 2)]]).unwrap();
    assert_eq!(e("k(1)^2", 1).normalize(&g3), e("2*o(1)", 1));
}

#[test]
fn random_strategy_reaches_the_same_normal_form() {
    let model = k3_rank2();
    let mut r = rng(11);
    for _ in 0..50 {
        let x = random_expr(&mut r, 3, 6, 2, &model);
        let a = normalize_with(&x, &model, Strategy::Priority);
        let b = normalize_with(&x, &model, Strategy::Random(&mut r));
        assert_eq!(a, b, "{x}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>(), arity in 1usize..=4) {
        let model = k3_rank2();
        let x = random_expr(&mut rng(seed), arity, 6, 3, &model);
        let n = x.normalize(&model);
        prop_assert_eq!(n.normalize(&model), n);
    }

    #[test]
    fn normalize_is_linear(seed in any::<u64>(), arity in 1usize..=3) {
        let model = k3_rank2();
        let mut r = rng(seed);
        let x = random_expr(&mut r, arity, 5, 2, &model);
        let y = random_expr(&mut r, arity, 5, 2, &model);
        let c = q_frac(3, 7);
        let lhs = x.scale(&c).add(&y).unwrap().normalize(&model);
        let rhs = x.normalize(&model).scale(&c).add(&y.normalize(&model)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn permutation_commutes_with_normalize(seed in any::<u64>()) {
        let model = k3_rank2();
        let x = random_expr(&mut rng(seed), 3, 6, 2, &model);
        let perm = [3, 1, 2];
        prop_assert_eq!(
            x.apply_permutation(&perm).unwrap().normalize(&model),
            x.normalize(&model).apply_permutation(&perm).unwrap()
        );
    }

    #[test]
    fn codimension_is_preserved(seed in any::<u64>(), arity in 1usize..=3, codim in 0usize..=4) {
        let model = k3_rank2();
        let x = common::random_homogeneous(&mut rng(seed), arity, codim, 2, &model);
        let n = x.normalize(&model);
        prop_assert!(n.is_zero() || n.homogeneous_codim().unwrap() == Some(codim));
        if arity >= 2 {
            let p = n.pushforward(1, &model).unwrap();
            prop_assert!(p.is_zero() || codim >= 2 && p.homogeneous_codim().unwrap() == Some(codim - 2));
        }
    }
}
