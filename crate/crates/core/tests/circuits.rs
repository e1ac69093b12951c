use qarch_core::circuits::{
    avg_post_move_ent_fidelity, dd_branch_probabilities, dd_move_circuit, paper_avg_post_move_ent_fidelity,
    sd_move_circuit, DdMode, GateNoiseTable, MoveInput, MoveOptions, PostMoveModel, PAPER_ENT_COEFFICIENTS,
};
use qarch_core::linalg::c;
use qarch_core::qbd::Architecture;
use qarch_core::quantum::haar::random_state;
use qarch_core::quantum::{state_fidelity, MemoryParams, PureState};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

fn inputs() -> Vec<PureState> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = vec![
        PureState::basis(2, 0).unwrap(),
        PureState::basis(2, 1).unwrap(),
        PureState::new(vec![c(h, 0.0), c(h, 0.0)]).unwrap(),
        PureState::new(vec![c(h, 0.0), c(0.0, h)]).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    v.extend((0..20).map(|_| random_state(2, &mut rng)));
    v
}

#[test]
fn noiseless_moves_are_exact() {
    let noise = GateNoiseTable::noiseless();
    let opts = MoveOptions::default();
    for psi in inputs() {
        let input = MoveInput::Qubit(psi.density());
        let sd = sd_move_circuit(&noise, &input, &opts).unwrap();
        assert!((state_fidelity(&sd.post_state, &psi).unwrap() - 1.0).abs() < 1e-10);
        let dd = dd_move_circuit(&noise, &input, &opts, DdMode::BranchAveraged).unwrap();
        assert!((state_fidelity(&dd.post_state, &psi).unwrap() - 1.0).abs() < 1e-10);
        for seed in 0..4 {
            let s = dd_move_circuit(&noise, &input, &opts, DdMode::Sampled { seed }).unwrap();
            assert!((state_fidelity(&s.post_state, &psi).unwrap() - 1.0).abs() < 1e-10);
        }
        let probs = dd_branch_probabilities(&noise, &input, &opts).unwrap();
        assert!(probs.iter().all(|p| (p - 0.25).abs() < 1e-12));
    }
}

#[test]
fn single_device_move_outperforms_teleportation() {
    let noise = GateNoiseTable::default();
    let m = MemoryParams::composite(0.00286, 0.001).unwrap();
    for reinit in [false, true] {
        let sd = PostMoveModel::from_circuit(&noise, Architecture::SD, reinit).unwrap();
        let dd = PostMoveModel::from_circuit(&noise, Architecture::DD, reinit).unwrap();
        for lm in [10.0, 100.0, 1e3, 1e4, 1e6] {
            assert!(sd.avg_ent_fidelity(lm, &m).unwrap() > dd.avg_ent_fidelity(lm, &m).unwrap());
        }
    }
}

#[test]
fn post_move_asymptote_near_quoted_upper_bound() {
    let noise = GateNoiseTable::default();
    let m = MemoryParams::composite(0.00286, 0.001).unwrap();
    let (c0, c1, c2) = PAPER_ENT_COEFFICIENTS;
    let quoted = c0 + c1 + c2;
    assert!((quoted - 0.956).abs() < 1e-3);
    let model = PostMoveModel::from_circuit(&noise, Architecture::SD, false).unwrap();
    assert!((model.avg_ent_fidelity(1e9, &m).unwrap() - quoted).abs() < 0.02);
    assert!((paper_avg_post_move_ent_fidelity(1e9, &m).unwrap() - quoted).abs() < 1e-5);
    let printed = avg_post_move_ent_fidelity(&noise, 1e9, &m).unwrap();
    assert!((printed - quoted).abs() > 0.1);
}

#[test]
fn circuit_average_matches_monte_carlo_over_storage_times() {
    let noise = GateNoiseTable::default();
    let m = MemoryParams::composite(0.00286, 0.001).unwrap();
    let lm = 1000.0;
    let model = PostMoveModel::from_circuit(&noise, Architecture::SD, true).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let exp = Exp::new(lm).unwrap();
    let samples: Vec<f64> = (0..20_000)
        .map(|_| model.gate_fidelity(exp.sample(&mut rng), &m).unwrap())
        .collect();
    let est = qarch_core::stats::MeanEstimate::from_samples(&samples).unwrap();
    assert!(est.within(model.avg_gate_fidelity(lm, &m).unwrap(), 4.0));
}
