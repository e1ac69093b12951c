//! Self-contained verification checks, shared by `qarch selftest` and the
//! acceptance suite. Each returns a [`Check`] instead of panicking.

use std::time::Instant;

use qarch_core::circuits::{
    avg_post_move_ent_fidelity, dd_move_circuit, sd_move_circuit, DdMode, GateNoiseTable, MoveInput, MoveOptions,
    PostMoveModel, PAPER_ENT_COEFFICIENTS,
};
use qarch_core::fidelity::{composite_condition, f1_avg, f2_avg, sd_memory_sufficient_bound};
use qarch_core::linalg::c;
use qarch_core::qbd::{
    boundary_probs, build_blocks, mean_drift_ok, quadratic_residual, rate_matrix, rate_matrix_via_inverse,
    truncated_stationary, ArchParams, Architecture,
};
use qarch_core::quantum::haar::random_state;
use qarch_core::quantum::{
    gate_fidelity_bowdrey, gate_fidelity_choi_oracle, gate_fidelity_closed, state_fidelity, ChannelKind, MemoryParams,
    NoiseChannel, PureState,
};
use qarch_core::sim::{run_replications, simulate, SimConfig};
use qarch_core::stats::MeanEstimate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} [{:>2}] {}: {} ({:.2} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

fn timed(id: u8, name: &'static str, body: impl FnOnce() -> qarch_core::Result<(bool, String)>) -> Check {
    let start = Instant::now();
    let (passed, detail) = body().unwrap_or_else(|e| (false, format!("error: {e}")));
    Check {
        id,
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..hi.ln()).exp()
}

/// Stable parameters with `mu_e <= mu_m` and load in `[0.05, 0.85]`.
fn stable_params(rng: &mut ChaCha8Rng, arch: Architecture) -> qarch_core::Result<ArchParams> {
    let mu_e = log_uniform(rng, 1.5, 1e3);
    let mu_m = log_uniform(rng, mu_e, 2e4);
    let lambda_m = log_uniform(rng, 1.0, 2e4);
    let service = 1.0 / mu_e + 1.0 / lambda_m + 1.0 / mu_m;
    let load = rng.random_range(0.05..0.85);
    ArchParams::new(arch, load / service, mu_e, lambda_m, mu_m)
}

fn composite_memory(rng: &mut ChaCha8Rng) -> qarch_core::Result<MemoryParams> {
    let t1 = log_uniform(rng, 1e-5, 10.0);
    MemoryParams::composite(t1, t1 * rng.random_range(0.01..1.0))
}

pub fn fidelity_routes(draws: usize, seed: u64) -> Check {
    timed(1, "fidelity-formula equivalence", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..draws {
            let kind = ChannelKind::ALL[rng.random_range(0..4)];
            let t1 = log_uniform(&mut rng, 1e-4, 10.0);
            let t2 = t1 * rng.random_range(0.01..2.0);
            let memory = MemoryParams::new(log_uniform(&mut rng, 1e-4, 10.0), t1, t2)?;
            let ch = NoiseChannel::new(kind, memory)?;
            let t = log_uniform(&mut rng, 1e-7, 30.0);
            let closed = gate_fidelity_closed(&ch, t)?;
            worst = worst
                .max((closed - gate_fidelity_bowdrey(&ch, t)?).abs())
                .max((closed - gate_fidelity_choi_oracle(&ch, t)?).abs());
        }
        Ok((worst < 1e-10, format!("{draws} draws, max deviation {worst:.2e}")))
    })
}

pub fn qbd_correctness(sets: usize, seed: u64) -> Check {
    timed(2, "QBD rate matrix and boundary probabilities", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = (0..sets)
            .map(|_| stable_params(&mut rng, Architecture::SD))
            .collect::<qarch_core::Result<Vec<_>>>()?;
        let devs = params
            .par_iter()
            .map(|p| -> qarch_core::Result<[f64; 3]> {
                let blocks = build_blocks(p);
                let r = rate_matrix(p)?;
                let residual = quadratic_residual(&blocks, &r);
                let inverse = (r - rate_matrix_via_inverse(&blocks)?).abs().max();
                let exact = boundary_probs(p)?;
                let trunc = truncated_stationary(p, 200)?;
                let boundary = (exact.pi0 - trunc.pi0).abs().max((exact.pi1 - trunc.levels[0]).abs().max());
                Ok([residual, inverse, boundary])
            })
            .collect::<qarch_core::Result<Vec<_>>>()?;
        let worst = devs.iter().fold([0.0f64; 3], |a, d| [a[0].max(d[0]), a[1].max(d[1]), a[2].max(d[2])]);
        Ok((
            worst[0] < 1e-10 && worst[1] < 1e-12 && worst[2] < 1e-8,
            format!(
                "{sets} sets, residual {:.1e}, inverse form {:.1e}, boundary vs level-200 {:.1e}",
                worst[0], worst[1], worst[2]
            ),
        ))
    })
}

/// Phase time fractions over `replications` independent runs of
/// `duration` seconds each, pooling the per-run batch-means errors.
pub fn phase_masses(duration: f64, replications: usize, seed: u64) -> Check {
    timed(3, "simulated SD phase masses", || {
        let p = ArchParams::new(Architecture::SD, 1.0, 10.0, 1000.0, 1667.0)?;
        let m = MemoryParams::composite(0.00286, 0.001)?;
        let mut cfg = SimConfig::new(p, m, duration, seed);
        cfg.replications = replications;
        let runs = run_replications(&cfg)?.runs;
        let pooled = |k: usize| {
            let n = runs.len() as f64;
            MeanEstimate {
                mean: runs.iter().map(|r| r.phase_time_fractions[k].mean).sum::<f64>() / n,
                std_err: runs.iter().map(|r| r.phase_time_fractions[k].std_err.powi(2)).sum::<f64>().sqrt() / n,
                n: runs.iter().map(|r| r.phase_time_fractions[k].n).sum(),
            }
        };
        let (ph1, ph3) = (pooled(0), pooled(2));
        let (z1, z3) = (ph1.z_score(p.lambda_e / p.mu_e), ph3.z_score(p.lambda_e / p.mu_m));
        let violations: u64 = runs.iter().map(|r| r.activity_violations).sum();
        Ok((
            z1.abs() <= 3.0 && z3.abs() <= 3.0 && violations == 0,
            format!(
                "phase 1 {:.5} (z {z1:+.2}), phase 3 {:.6} (z {z3:+.2}), {replications} x {duration:.0} s",
                ph1.mean, ph3.mean
            ),
        ))
    })
}

/// Closed-form vs Monte Carlo average fidelity in one rate regime, with
/// `lambda_c` chosen so each architecture yields at least `samples`
/// computation waits after warm-up.
pub fn closed_vs_simulation(lambda_e: f64, mu_e: f64, samples: usize, seed: u64) -> Check {
    let name = if lambda_e < 10.0 {
        "closed form vs simulation (mu_e=10, lambda_e=1)"
    } else {
        "closed form vs simulation (mu_e=500, lambda_e=50)"
    };
    timed(4, name, || {
        let lambda_c = 150.0;
        let memory = MemoryParams::composite(0.00286, 0.001)?;
        let mut cfgs = Vec::new();
        for (arch, mu_m) in [(Architecture::SD, 1667.0), (Architecture::DD, 700.0)] {
            let p = ArchParams::new(arch, lambda_e, mu_e, 1000.0, mu_m)?.with_computation(lambda_c, f64::INFINITY)?;
            let mut cfg = SimConfig::new(p, memory, 1.0, seed);
            cfg.duration = 1.1 * samples as f64 / (lambda_c * (1.0 - cfg.warmup_fraction));
            cfgs.push(cfg);
        }
        let results = cfgs
            .par_iter()
            .map(|cfg| -> qarch_core::Result<(usize, f64, f64, f64)> {
                let exact = match cfg.params.arch {
                    Architecture::SD => f1_avg(&cfg.params, &cfg.memory)?,
                    Architecture::DD => f2_avg(&cfg.params, &cfg.memory)?,
                };
                let r = simulate(cfg)?;
                let est = r.f_avg_estimate.ok_or(qarch_core::Error::EmptySamples)?;
                Ok((r.comp_wait_samples.len(), exact, est.mean, est.z_score(exact)))
            })
            .collect::<qarch_core::Result<Vec<_>>>()?;
        let ok = results.iter().all(|&(n, _, _, z)| n >= samples && z.abs() <= 3.0);
        let detail = results
            .iter()
            .zip(["f1", "f2"])
            .map(|(&(n, exact, mean, z), label)| format!("{label} {exact:.6} vs {mean:.6} (z {z:+.2}, n {n})"))
            .collect::<Vec<_>>()
            .join("; ");
        Ok((ok, detail))
    })
}

pub fn proposition_one(sets: usize, seed: u64) -> Check {
    timed(5, "identical memories favour DD", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut checked, mut violations, mut min_gap) = (0, 0, f64::INFINITY);
        while checked < sets {
            let sd = stable_params(&mut rng, Architecture::SD)?;
            let dd = ArchParams {
                arch: Architecture::DD,
                mu_m: log_uniform(&mut rng, sd.mu_e, 2e4),
                ..sd
            };
            if !mean_drift_ok(&dd) {
                continue;
            }
            let m = composite_memory(&mut rng)?;
            let gap = f2_avg(&dd, &m)? - f1_avg(&sd, &m)?;
            min_gap = min_gap.min(gap);
            if gap < -1e-12 {
                violations += 1;
            }
            checked += 1;
        }
        Ok((violations == 0, format!("{sets} sets, {violations} violations, min f2-f1 {min_gap:.3e}")))
    })
}

pub fn proposition_two(draws: usize, seed: u64) -> Check {
    timed(6, "SD memory bound is sufficient", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut checked, mut failures) = (0, 0);
        while checked < draws {
            let mu_e = log_uniform(&mut rng, 1.01, 500.0);
            let mu_m_sd = log_uniform(&mut rng, mu_e * 1.01, 2e4);
            let mu_m_dd = log_uniform(&mut rng, mu_e, mu_m_sd);
            let lambda_m = log_uniform(&mut rng, 1.0, 2e4);
            let service = 1.0 / mu_e + 1.0 / lambda_m + 1.0 / mu_m_dd;
            let lambda_e = rng.random_range(0.05..0.85) / service;
            let sd = ArchParams::new(Architecture::SD, lambda_e, mu_e, lambda_m, mu_m_sd)?;
            let dd = ArchParams {
                arch: Architecture::DD,
                mu_m: mu_m_dd,
                ..sd
            };
            if !(mean_drift_ok(&dd) && mu_e < mu_m_dd && mu_m_dd < mu_m_sd) {
                continue;
            }
            let t1_dd = log_uniform(&mut rng, 1e-5, 10.0);
            let m_dd = MemoryParams::composite(t1_dd, t1_dd * rng.random_range(0.01..1.0))?;
            let bound = sd_memory_sufficient_bound(&sd, &dd, t1_dd)?;
            let t2_sd = if bound > 0.0 {
                bound * rng.random_range(1.0001..10.0)
            } else {
                log_uniform(&mut rng, 1e-6, 1.0)
            };
            let m_sd = MemoryParams::composite(t2_sd * rng.random_range(1.0..100.0), t2_sd)?;
            if !composite_condition(&sd, &dd, &m_sd, &m_dd)? {
                failures += 1;
            }
            checked += 1;
        }
        Ok((failures == 0, format!("{draws} draws above the bound, {failures} where SD does not win")))
    })
}

pub fn post_move_asymptote() -> Check {
    timed(7, "post-move asymptote", || {
        let noise = GateNoiseTable::default();
        let m = MemoryParams::composite(0.00286, 0.001)?;
        let model = PostMoveModel::from_circuit(&noise, Architecture::SD, false)?;
        let (q0, q1, q2) = PAPER_ENT_COEFFICIENTS;
        let quoted = q0 + q1 + q2;
        let circuit = model.avg_ent_fidelity(1e12, &m)?;
        let printed = avg_post_move_ent_fidelity(&noise, 1e12, &m)?;
        let (c0, c1, c2) = model.ent_coefficients();
        Ok((
            (circuit - quoted).abs() < 0.02,
            format!(
                "quoted {quoted:.4}, circuit {circuit:.4}, symbolic expression {printed:.4}; \
                 coefficients quoted ({q0}, {q1}, {q2}) vs circuit ({c0:.4}, {c1:.6}, {c2:.6})"
            ),
        ))
    })
}

pub fn ideal_circuits(random_states: usize, seed: u64) -> Check {
    timed(8, "ideal SD and DD moves are exact", || {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut inputs = vec![
            PureState::basis(2, 0)?,
            PureState::basis(2, 1)?,
            PureState::new(vec![c(h, 0.0), c(h, 0.0)])?,
            PureState::new(vec![c(h, 0.0), c(0.0, h)])?,
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        inputs.extend((0..random_states).map(|_| random_state(2, &mut rng)));
        let noise = GateNoiseTable::noiseless();
        let opts = MoveOptions::default();
        let mut worst: f64 = 0.0;
        for psi in &inputs {
            let input = MoveInput::Qubit(psi.density());
            let sd = sd_move_circuit(&noise, &input, &opts)?;
            let dd = dd_move_circuit(&noise, &input, &opts, DdMode::BranchAveraged)?;
            for out in [sd, dd] {
                worst = worst.max((1.0 - state_fidelity(&out.post_state, psi)?).abs());
            }
        }
        Ok((worst < 1e-10, format!("{} inputs, max infidelity {worst:.1e}", inputs.len())))
    })
}

/// The quick subset run by `qarch selftest`.
pub fn selftest() -> Vec<Check> {
    vec![
        fidelity_routes(1000, 1),
        qbd_correctness(20, 2),
        proposition_one(1000, 5),
        proposition_two(500, 6),
        post_move_asymptote(),
        ideal_circuits(20, 8),
    ]
}
