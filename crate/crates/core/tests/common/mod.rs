#![allow(dead_code)]

use qarch_core::qbd::{ArchParams, Architecture};
use qarch_core::quantum::MemoryParams;
use rand::Rng;

pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

/// Stable parameters with `mu_e <= mu_m` and load in `[0.05, 0.85]`.
pub fn stable_params<R: Rng>(rng: &mut R, arch: Architecture) -> ArchParams {
    let mu_e = log_uniform(rng, 1.5, 1e3);
    let mu_m = log_uniform(rng, mu_e, 2e4);
    let lambda_m = log_uniform(rng, 1.0, 2e4);
    let service = 1.0 / mu_e + 1.0 / lambda_m + 1.0 / mu_m;
    let load = rng.random_range(0.05..0.85);
    ArchParams::new(arch, load / service, mu_e, lambda_m, mu_m).unwrap()
}

/// Composite memory with `T2 <= T1`.
pub fn memory<R: Rng>(rng: &mut R) -> MemoryParams {
    let t1 = log_uniform(rng, 1e-5, 10.0);
    let t2 = t1 * rng.random_range(0.01..1.0);
    MemoryParams::composite(t1, t2).unwrap()
}
