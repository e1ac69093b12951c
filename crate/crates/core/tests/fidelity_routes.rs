mod common;

use qarch_core::quantum::haar::{monte_carlo_gate_fidelity, random_unitary};
use qarch_core::quantum::{
    gate_fidelity_bowdrey, gate_fidelity_choi_oracle, gate_fidelity_closed, ChannelKind, MemoryParams, NoiseChannel,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_channel(rng: &mut ChaCha8Rng) -> (NoiseChannel, f64) {
    let kind = ChannelKind::ALL[rng.random_range(0..4)];
    let t1 = common::log_uniform(rng, 1e-4, 10.0);
    let t2 = t1 * rng.random_range(0.01..2.0);
    let t = common::log_uniform(rng, 1e-4, 10.0);
    let memory = MemoryParams::new(t, t1, t2).unwrap();
    let wait = if rng.random_bool(0.05) { 0.0 } else { common::log_uniform(rng, 1e-7, 30.0) };
    (NoiseChannel::new(kind, memory).unwrap(), wait)
}

#[test]
fn three_routes_agree_on_random_channels() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let (ch, t) = random_channel(&mut rng);
        let closed = gate_fidelity_closed(&ch, t).unwrap();
        let bowdrey = gate_fidelity_bowdrey(&ch, t).unwrap();
        let choi = gate_fidelity_choi_oracle(&ch, t).unwrap();
        assert!((closed - bowdrey).abs() < 1e-10, "{ch:?} t={t}");
        assert!((closed - choi).abs() < 1e-10, "{ch:?} t={t}");
        assert!((0.5 - 1e-12..=1.0 + 1e-12).contains(&closed));
    }
}

#[test]
fn haar_average_is_gate_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let (ch, t) = random_channel(&mut rng);
        let gate = random_unitary(2, &mut rng);
        let est = monte_carlo_gate_fidelity(&ch, t, &gate, 4000, &mut rng).unwrap();
        let exact = gate_fidelity_closed(&ch, t).unwrap();
        assert!(est.within(exact, 4.0), "{est:?} vs {exact}");
    }
}

#[test]
fn composite_rejects_excess_dephasing_time() {
    assert!(NoiseChannel::composite(1.0, 2.5).is_err());
    assert!(NoiseChannel::composite(1.0, 2.0).is_ok());
}
