use mck_core::ck::{
    check_multiplicativity, cohomological_multiplicativity, power_projectors, power_small_diagonal,
    projected_small_diagonals, surface_projectors, symmetric_projectors, verify_ck_axioms,
};
use mck_core::corr::Correspondence;
use mck_core::hilb::SetPartition;
use mck_core::report::{Budget, CheckReport, Status};
use mck_core::{SurfaceModel, TautExpr};

#[test]
fn power_two_has_fifteen_composition_instances() {
    let model = SurfaceModel::k3();
    let fam = power_projectors(2, &model).unwrap();
    assert_eq!(fam.indices().collect::<Vec<_>>(), vec![0, 2, 4, 6, 8]);
    let mut report = CheckReport::new("projectors", "k3");
    verify_ck_axioms(&fam, &model, &Budget::unlimited().start(), &mut report).unwrap();
    let compositions = report
        .checks
        .iter()
        .filter(|c| c.id.starts_with("idempotent") || c.id.starts_with("orthogonal"))
        .count();
    assert_eq!(compositions, 15);
    assert_eq!(report.overall(), Status::Pass);
}

#[test]
fn swap_invariance_on_the_square() {
    let model = SurfaceModel::k3();
    let fine = SetPartition::new(2, vec![vec![1], vec![2]]).unwrap();
    let fam = symmetric_projectors(&fine, &model).unwrap();
    for (_, p) in fam.iter() {
        let swapped = p.class().apply_permutation(&[2, 1, 4, 3]).unwrap().normalize(&model);
        assert_eq!(&swapped, p.class());
    }
}

#[test]
fn factorwise_images_match_the_tensor_action_on_the_square() {
    let model = SurfaceModel::k3();
    let fam = power_projectors(2, &model).unwrap();
    let classes = projected_small_diagonals(&fam, &model, false, &Budget::unlimited().start()).unwrap();
    let delta = power_small_diagonal(2, &model).unwrap();
    for (i, j, k) in [(0, 4, 4), (2, 2, 4), (4, 4, 8), (2, 6, 8), (4, 4, 4)] {
        let t = Correspondence::tensor(&[
            fam.projector(i).unwrap().clone(),
            fam.projector(j).unwrap().clone(),
            fam.projector(k).unwrap().clone(),
        ])
        .unwrap();
        let direct = t.act_on_cycle(&delta, &model).unwrap();
        let fast = classes.get(&(i, j, k)).cloned().unwrap_or_else(|| TautExpr::zero(6));
        assert_eq!(direct, fast, "({i},{j},{k})");
    }
}

#[test]
fn reduced_and_full_reports_agree_on_the_square() {
    let model = SurfaceModel::k3();
    let fam = power_projectors(2, &model).unwrap();
    let clock = Budget::unlimited().start();
    let full = check_multiplicativity(&fam, &model, false, &clock).unwrap();
    let reduced = check_multiplicativity(&fam, &model, true, &clock).unwrap();
    assert_eq!(full.triples.len(), 125);
    assert!(full.passes() && reduced.passes());
    for r in &reduced.triples {
        let f = full.triples.iter().find(|t| (t.i, t.j, t.k) == (r.i, r.j, r.k)).unwrap();
        assert_eq!(r, f);
    }
    // the small diagonal has nonzero pieces exactly where the degrees add up
    for t in &full.triples {
        assert_eq!(t.cohom_vanishes, t.chow_vanishes, "({},{},{})", t.i, t.j, t.k);
    }
    assert!(full.triples.iter().any(|t| !t.chow_vanishes));
}

#[test]
fn abelian_small_diagonal_is_graded_in_cohomology() {
    for m in 1..=2 {
        let degrees = cohomological_multiplicativity(&SurfaceModel::abelian(), m).unwrap();
        assert!(degrees.keys().all(|&(i, j, k)| i + j + k == 8 * m));
    }
    assert!(surface_projectors(&SurfaceModel::abelian()).is_err());
}
