mod common;

use mck_core::cohom::{
    evaluate, graded_traces, integral, is_cohomologically_trivial, trace_of_correspondence, CohomModel,
    KunnethTensor,
};
use mck_core::corr::Correspondence;
use mck_core::dsl::parse_expr;
use mck_core::rational::q;
use mck_core::ring::small_diagonal;
use mck_core::{SurfaceModel, TautExpr};
use proptest::prelude::*;

use common::{k3_rank2, random_expr, rng};

fn e(s: &str, arity: usize) -> TautExpr {
    parse_expr(s, Some(arity)).unwrap()
}

fn generic() -> SurfaceModel {
    SurfaceModel::generic(12, 0, vec![vec![q(-2)]]).unwrap()
}

#[test]
fn point_relations_hold_in_cohomology() {
    let k3 = CohomModel::k3();
    assert!(evaluate(&e("D(1,2)*o(1) - o(1)*o(2)", 2), &k3).unwrap().is_zero());
    assert!(is_cohomologically_trivial(&e("D(1,2)^2 - 24*o(1)*o(2)", 2), &k3).unwrap());
    assert!(!is_cohomologically_trivial(&e("o(1)", 1), &k3).unwrap());
}

#[test]
fn integrals() {
    let k3 = CohomModel::k3();
    assert_eq!(integral(&e("o(1)*o(2)", 2), &k3).unwrap(), q(1));
    assert_eq!(integral(&e("D(1,2)^2", 2), &k3).unwrap(), q(24));
    assert_eq!(integral(&e("D(1,2)*D(1,3)*D(2,3)", 3), &k3).unwrap(), q(24));
    assert!(integral(&e("o(1)", 2), &k3).is_err());
    assert_eq!(integral(&e("D(1,2)^2", 2), &CohomModel::abelian_default()).unwrap(), q(0));
}

#[test]
fn diagonal_is_dual_to_the_pairing() {
    for model in [CohomModel::k3(), CohomModel::abelian_default()] {
        let delta = evaluate(&e("D(1,2)", 2), &model).unwrap();
        for x in 0..model.dim() {
            for y in 0..model.dim() {
                // ∫ Δ · (x × y) = ∫ x·y
                let xy = KunnethTensor::pullback_class(2, 1, &vec![(x, q(1))], &model)
                    .mul(&KunnethTensor::pullback_class(2, 2, &vec![(y, q(1))], &model), &model)
                    .unwrap();
                let lhs = delta.mul(&xy, &model).unwrap().top_coefficient(&model);
                assert_eq!(lhs, model.pairing()[x][y], "{} {}", model.label(x), model.label(y));
            }
        }
    }
}

#[test]
fn traces_of_the_diagonal() {
    let id = Correspondence::identity(1);
    assert_eq!(trace_of_correspondence(&id, &CohomModel::k3()).unwrap(), q(24));
    assert_eq!(trace_of_correspondence(&id, &CohomModel::abelian_default()).unwrap(), q(0));
    let g = CohomModel::for_surface(&generic()).unwrap();
    assert_eq!(trace_of_correspondence(&id, &g).unwrap(), q(12));
    for model in [CohomModel::k3(), CohomModel::abelian_default(), g] {
        let traces = graded_traces(&id, &model).unwrap();
        let betti: Vec<_> = model.betti().iter().map(|&b| q(b as i64)).collect();
        assert_eq!(traces, betti);
    }
}

#[test]
fn abelian_diagonal_has_odd_components() {
    let a = CohomModel::abelian_default();
    let t = evaluate(&e("D(1,2)", 2), &a).unwrap();
    assert!(t
        .components()
        .any(|(key, _)| a.degree(key[0] as usize) == 1 && a.degree(key[1] as usize) == 3));
}

#[test]
fn abelian_small_diagonal_differs_from_the_k3_expansion() {
    let a = CohomModel::abelian_default();
    let bv = e("D(1,2)*o(3) + D(1,3)*o(2) + D(2,3)*o(1) - o(1)*o(2) - o(1)*o(3) - o(2)*o(3)", 3);
    let small = small_diagonal(3, &[1, 2, 3], &SurfaceModel::abelian()).unwrap();
    assert!(!is_cohomologically_trivial(&small.sub(&bv).unwrap(), &a).unwrap());
    let k3 = CohomModel::k3();
    let small_k3 = e("D(1,2)*D(1,3)", 3);
    assert!(is_cohomologically_trivial(&small_k3.sub(&bv).unwrap(), &k3).unwrap());
}

#[test]
fn graded_commutativity_of_the_cup_product() {
    for model in [CohomModel::k3(), CohomModel::abelian_default()] {
        for x in 0..model.dim() {
            for y in 0..model.dim() {
                let sign = if model.degree(x) * model.degree(y) % 2 == 1 { q(-1) } else { q(1) };
                let xy = model.product(x, y).clone();
                let yx: Vec<_> = model.product(y, x).iter().map(|(i, c)| (*i, c * &sign)).collect();
                assert_eq!(xy, yx);
            }
        }
    }
}

#[test]
fn multiplication_by_n() {
    let a = CohomModel::abelian_default();
    let two = a.multiplication_by_n(2).unwrap();
    let minus = a.multiplication_by_n(-1).unwrap();
    for b in 0..a.dim() {
        let d = a.degree(b) as u32;
        assert_eq!(two.image(b), &vec![(b, q(2i64.pow(d)))]);
        assert_eq!(minus.image(b), &vec![(b, q((-1i64).pow(d)))]);
    }
    assert!(CohomModel::k3().multiplication_by_n(2).is_err());
}

#[test]
fn generic_rules_are_sound() {
    let model = generic();
    let cohom = CohomModel::for_surface(&model).unwrap();
    let mut r = rng(5);
    for _ in 0..300 {
        let x = random_expr(&mut r, 3, 5, 2, &model);
        assert_eq!(
            evaluate(&x, &cohom).unwrap(),
            evaluate(&x.normalize(&model), &cohom).unwrap(),
            "{x}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn normalization_is_sound(seed in any::<u64>(), arity in 1usize..=3) {
        let model = k3_rank2();
        let cohom = CohomModel::for_surface(&model).unwrap();
        let x = random_expr(&mut rng(seed), arity, 5, 2, &model);
        let n = x.normalize(&model);
        prop_assert_eq!(evaluate(&x, &cohom).unwrap(), evaluate(&n, &cohom).unwrap());
    }

    #[test]
    fn evaluation_is_multiplicative(seed in any::<u64>(), arity in 1usize..=3, abelian in any::<bool>()) {
        let model = if abelian { SurfaceModel::abelian() } else { k3_rank2() };
        let cohom = CohomModel::for_surface(&model).unwrap();
        let mut r = rng(seed);
        let x = random_expr(&mut r, arity, 3, 2, &model);
        let y = random_expr(&mut r, arity, 3, 2, &model);
        let lhs = evaluate(&x.mul_raw(&y).unwrap(), &cohom).unwrap();
        let rhs = evaluate(&x, &cohom).unwrap().mul(&evaluate(&y, &cohom).unwrap(), &cohom).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn permutation_signs_are_consistent(seed in any::<u64>(), abelian in any::<bool>()) {
        let model = if abelian { SurfaceModel::abelian() } else { k3_rank2() };
        let cohom = CohomModel::for_surface(&model).unwrap();
        let x = random_expr(&mut rng(seed), 3, 4, 2, &model);
        for perm in [[2, 1, 3], [3, 1, 2], [2, 3, 1]] {
            let lhs = evaluate(&x.apply_permutation(&perm).unwrap(), &cohom).unwrap();
            let rhs = evaluate(&x, &cohom).unwrap().pullback(&perm, 3, &cohom).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pushforward_commutes_with_evaluation(seed in any::<u64>(), abelian in any::<bool>(), d in 1usize..=3) {
        let model = if abelian { SurfaceModel::abelian() } else { k3_rank2() };
        let cohom = CohomModel::for_surface(&model).unwrap();
        let x = random_expr(&mut rng(seed), 3, 5, 2, &model);
        let lhs = evaluate(&x.pushforward(d, &model).unwrap(), &cohom).unwrap();
        let rhs = evaluate(&x, &cohom).unwrap().pushforward(d, &cohom).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
