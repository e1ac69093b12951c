mod common;

use nalgebra::{Matrix3, RowVector3};
use qarch_core::qbd::{
    boundary_probs, build_blocks, quadratic_residual, rate_matrix, rate_matrix_via_inverse, spectral_radius,
    truncated_stationary, ArchParams, Architecture,
};
use qarch_core::waiting::{waiting_dist_dd, waiting_dist_sd};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn rate_matrix_solves_quadratic_and_matches_inverse_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let p = common::stable_params(&mut rng, Architecture::SD);
        let blocks = build_blocks(&p);
        let r = rate_matrix(&p).unwrap();
        assert!(quadratic_residual(&blocks, &r) < 1e-10, "{p:?}");
        let inv = rate_matrix_via_inverse(&blocks).unwrap();
        assert!((r - inv).abs().max() < 1e-12, "{p:?}");
        assert!(spectral_radius(&r) < 1.0);
    }
}

#[test]
fn boundary_probabilities_match_truncated_chain() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let p = common::stable_params(&mut rng, Architecture::DD);
        let sol = boundary_probs(&p).unwrap();
        let trunc = truncated_stationary(&p, 200).unwrap();
        assert!((sol.pi0 - trunc.pi0).abs() < 1e-8, "{p:?}");
        assert!((sol.pi1 - trunc.levels[0]).abs().max() < 1e-8, "{p:?}");
        assert!((sol.total_mass().unwrap() - 1.0).abs() < 1e-10);
        let masses = RowVector3::new(sol.phase1_mass, sol.phase2_mass, sol.phase3_mass);
        assert!((masses - trunc.phase_masses()).abs().max() < 1e-8);
        assert!((masses - sol.phase_masses_from_tail().unwrap()).abs().max() < 1e-10);
        let le = p.lambda_e;
        let expected = RowVector3::new(le / p.mu_e, le / p.lambda_m, le / p.mu_m);
        assert!((masses - expected).abs().max() < 1e-10);
    }
}

#[test]
fn generator_rows_sum_to_zero() {
    let p = ArchParams::new(Architecture::SD, 1.0, 10.0, 1000.0, 1667.0).unwrap();
    let b = build_blocks(&p);
    let ones = nalgebra::Vector3::repeat(1.0);
    let interior: Matrix3<f64> = b.a0 + b.a1 + b.a2;
    assert!((interior * ones).abs().max() < 1e-12);
    assert!((b.b00 + b.b01.sum()).abs() < 1e-12);
    assert!((b.b10 + (b.a1 + b.a2) * ones).abs().max() < 1e-12);
}

#[test]
fn unstable_parameters_are_rejected() {
    let p = ArchParams::new(Architecture::SD, 9.9, 10.0, 1000.0, 1667.0).unwrap();
    assert!(rate_matrix(&p).is_err());
    assert!(boundary_probs(&p).is_err());
    assert!(waiting_dist_sd(&p).is_err());
}

#[test]
fn waiting_distributions_carry_phase_masses() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let p = common::stable_params(&mut rng, Architecture::SD);
        let sol = boundary_probs(&p).unwrap();
        let sd = waiting_dist_sd(&p).unwrap();
        let dd = waiting_dist_dd(&p).unwrap();
        assert!((sd.atom() - (1.0 - sol.phase1_mass - sol.phase3_mass)).abs() < 1e-10);
        assert!((dd.atom() - (1.0 - sol.phase3_mass)).abs() < 1e-10);
        assert!((sd.total_mass() - 1.0).abs() < 1e-12);
        assert!(sd.mean() >= dd.mean());
    }
}
