//! The induced vector frame preserves the frame operator exactly, is
//! independent of the chosen local bases, and agrees with the operator
//! family in every class.

use cgframe_core::{
    certify_cframe, cframe_frame_operator, compose, equivalence_report, incomplete_family,
    induce, linalg, random_frame_with_bounds, random_local_bases, random_onb, LocalBases,
    DEFAULT_TOL,
};
use rand::Rng;

mod common;
use common::*;

#[test]
fn flattening_preserves_the_frame_operator() {
    for seed in 0..40u64 {
        let mut r = rng(100 + seed);
        let n = r.random_range(1..6);
        let total = r.random_range(1..8);
        let dims = random_partition(&mut r, total, 4);
        let weights = random_weights(&mut r, dims.len());
        let family = gaussian_family(&mut r, n, &dims, &weights);
        let bases = random_local_bases(seed, family.dims());

        let flattened = induce(&family, &bases).unwrap();
        assert_eq!(flattened.len(), family.coefficient_dim());
        let gap = linalg::spectral_norm(
            &(family.frame_operator().matrix() - cframe_frame_operator(&flattened).matrix()),
        );
        let scale = linalg::spectral_norm(family.frame_operator().matrix()).max(1.0);
        assert!(gap <= 1e-12 * scale, "operator gap {gap:.3e} at seed {seed}");
    }
}

#[test]
fn certificates_do_not_depend_on_the_local_bases() {
    for seed in 0..25u64 {
        let mut r = rng(200 + seed);
        let n = r.random_range(2..6);
        let total = r.random_range(2..8);
        let dims = random_partition(&mut r, total, 4);
        let weights = random_weights(&mut r, dims.len());
        let family = gaussian_family(&mut r, n, &dims, &weights);

        let first = certify_cframe(
            &induce(&family, &random_local_bases(seed, family.dims())).unwrap(),
            DEFAULT_TOL,
        )
        .unwrap();
        let second = certify_cframe(
            &induce(&family, &random_local_bases(seed + 1000, family.dims())).unwrap(),
            DEFAULT_TOL,
        )
        .unwrap();

        assert_eq!(first.is_frame, second.is_frame);
        assert_eq!(first.is_tight, second.is_tight);
        assert_eq!(first.is_parseval, second.is_parseval);
        assert_eq!(first.is_complete, second.is_complete);
        assert_eq!(first.is_riesz_basis, second.is_riesz_basis);
        assert_eq!(first.is_orthonormal_system, second.is_orthonormal_system);
        assert_eq!(first.is_orthonormal_basis, second.is_orthonormal_basis);
        assert!((first.lower_bound - second.lower_bound).abs() <= 1e-10);
        assert!((first.upper_bound - second.upper_bound).abs() <= 1e-10);
    }
}

#[test]
fn class_equivalence_across_generated_classes() {
    for seed in 0..6u64 {
        let mut r = rng(300 + seed);
        let n = r.random_range(2..5);
        let square_dims = random_partition(&mut r, n, 4);
        let square_w = random_weights(&mut r, square_dims.len());
        let redundant_dims = random_partition(&mut r, n + 2, 4);
        let redundant_w = random_weights(&mut r, redundant_dims.len());

        let families = vec![
            random_onb(seed, n, &local_dims(&square_dims), &square_w).unwrap(),
            random_frame_with_bounds(seed, n, &local_dims(&square_dims), &square_w, 1.0, 1.0)
                .unwrap(),
            random_frame_with_bounds(seed, n, &local_dims(&square_dims), &square_w, 2.0, 2.0)
                .unwrap(),
            random_frame_with_bounds(seed, n, &local_dims(&square_dims), &square_w, 0.5, 2.0)
                .unwrap(),
            random_frame_with_bounds(
                seed,
                n,
                &local_dims(&redundant_dims),
                &redundant_w,
                0.5,
                2.0,
            )
            .unwrap(),
            incomplete_family(seed, n, &local_dims(&redundant_dims), &redundant_w).unwrap(),
        ];

        for (k, family) in families.iter().enumerate() {
            let bases = random_local_bases(seed * 10 + k as u64, family.dims());
            let report = equivalence_report(family, &bases, DEFAULT_TOL).unwrap();
            assert!(
                report.all_agree,
                "disagreement at seed {seed}, family {k}: {:?}",
                report.agreements
            );
            assert!(report.lower_bound_diff <= 1e-10);
            assert!(report.upper_bound_diff <= 1e-10);
        }
    }
}

#[test]
fn induced_identity_bases_match_paper_layout() {
    // identity local bases leave the flattened vectors equal to the
    // adjoint block columns
    let mut r = rng(400);
    let n = 3;
    let family = gaussian_family(&mut r, n, &[2, 1], &[1.0, 1.0]);
    let frame = induce(&family, &LocalBases::identity(family.dims())).unwrap();
    assert_eq!(frame.len(), 3);
    for item in frame.items() {
        let (j, k) = item.origin.unwrap();
        let expected = family.block(j).adjoint().column(k).into_owned();
        assert!((&item.vector - expected).norm() <= 1e-15);
    }
}

#[test]
fn induced_energy_identity() {
    // Σ_j μ_j ‖Λ_j h‖² = Σ_{j,k} μ_j |⟨h, u_{j,k}⟩|² for random h
    for seed in 0..20u64 {
        let mut r = rng(500 + seed);
        let n = r.random_range(1..6);
        let total = r.random_range(1..7);
        let dims = random_partition(&mut r, total, 4);
        let weights = random_weights(&mut r, dims.len());
        let family = gaussian_family(&mut r, n, &dims, &weights);
        let bases = random_local_bases(seed, family.dims());
        let frame = induce(&family, &bases).unwrap();

        let h = gaussian_vector(&mut r, n);
        let lhs: f64 = (0..family.atom_count())
            .map(|j| family.measure().weight(j) * (family.block(j) * &h).norm_squared())
            .sum();
        let rhs: f64 = frame
            .items()
            .iter()
            .map(|item| item.weight * item.vector.dotc(&h).norm_sqr())
            .sum();
        assert!(
            (lhs - rhs).abs() <= 1e-10 * lhs.max(1.0),
            "energy identity gap {:.3e} at seed {seed}",
            (lhs - rhs).abs()
        );
    }
}

#[test]
fn riesz_flag_agrees_for_composed_bases() {
    for seed in 0..10u64 {
        let mut r = rng(600 + seed);
        let n = r.random_range(2..5);
        let dims = random_partition(&mut r, n, 4);
        let w = random_weights(&mut r, dims.len());
        let theta = random_onb(seed, n, &local_dims(&dims), &w).unwrap();
        let svals: Vec<f64> = (0..n).map(|_| r.random_range(0.5..2.0)).collect();
        let v = matrix_with_singular_values(&mut r, &svals);
        let riesz = compose(&theta, &v).unwrap();
        let report = equivalence_report(
            &riesz,
            &random_local_bases(seed, riesz.dims()),
            DEFAULT_TOL,
        )
        .unwrap();
        assert!(report.gframe.is_riesz_basis);
        assert!(report.cframe.is_riesz_basis);
        assert!(report.all_agree);
    }
}
