//! Average gate and entanglement fidelities under queueing delays, and the
//! predicates that decide which architecture wins.
//!
//! A stored qubit that waits `t` seconds under channel `N` has gate fidelity
//! `F(N_t)`; averaging over a waiting-time law `f_W` gives
//! `F_avg = int F(N_t) f_W(t) dt`. Every fidelity here is a constant plus
//! decaying exponentials and every waiting law is an exponential mixture, so
//! the integral is a finite sum of rate-shifted fractions.

use serde::{Deserialize, Serialize};

use crate::qbd::{check_drift, ArchParams};
use crate::quadrature;
use crate::quantum::{ent_fidelity_from_gate, ChannelKind, MemoryParams, NoiseChannel};
use crate::waiting::{move_waiting_dist, waiting_dist_dd, waiting_dist_sd, WaitingTimeDist};
use crate::{Error, Result};

/// Absolute tolerance of the quadrature oracle.
pub const QUADRATURE_TOL: f64 = 1e-11;

/// Differences below this are reported as a tie.
pub const TIE_TOL: f64 = 1e-12;

/// Closed-form `atom F(0) + sum_j c_j int e^{-r_j t} F(t) dt`.
pub fn avg_fidelity_over_dist(dist: &WaitingTimeDist, channel: &NoiseChannel) -> f64 {
    let f = channel.fidelity_terms();
    let continuous: f64 = dist
        .components()
        .iter()
        .map(|c| {
            let decays: f64 = f.terms.iter().map(|&(w, a)| w / (c.rate + a)).sum();
            c.coefficient * (f.constant / c.rate + decays)
        })
        .sum();
    dist.atom() * f.eval(0.0) + continuous
}

/// Same average by adaptive quadrature of `pdf(t) F(t)` over
/// `[0, 50 / min_rate]`.
pub fn avg_fidelity_quadrature(dist: &WaitingTimeDist, channel: &NoiseChannel) -> Result<f64> {
    let f = channel.fidelity_terms();
    let Some(min_rate) = dist.min_rate() else {
        return Ok(dist.atom() * f.eval(0.0));
    };
    let upper = 50.0 / min_rate;
    let mut breaks: Vec<f64> = dist
        .components()
        .iter()
        .flat_map(|c| quadrature::geometric_breaks(0.0, upper, 0.25 / c.rate))
        .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let integral = quadrature::integrate_with_breaks(|t| dist.pdf(t) * f.eval(t), &breaks, QUADRATURE_TOL)?;
    Ok(dist.atom() * f.eval(0.0) + integral)
}

fn composite(m: &MemoryParams) -> Result<NoiseChannel> {
    NoiseChannel::new(ChannelKind::Composite, *m)
}

/// `x / (a x + 1)`, the Laplace transform `int e^{-a t} e^{-t/x} dt`.
fn lt(a: f64, x: f64) -> f64 {
    x / (a * x + 1.0)
}

/// SD average gate fidelity under composite storage noise.
pub fn f1_avg(p: &ArchParams, m: &MemoryParams) -> Result<f64> {
    check_drift(p)?;
    m.validate_composite()?;
    let (le, me, mm) = (p.lambda_e, p.mu_e, p.mu_m);
    let (t1, t2) = (m.t1, m.t2);
    Ok(1.0 - le / 2.0 * (1.0 / me + 1.0 / mm)
        + le / 6.0 * (2.0 * lt(me, t2) + lt(me, t1) + 2.0 * lt(mm, t2) + lt(mm, t1)))
}

/// DD average gate fidelity under composite storage noise.
pub fn f2_avg(p: &ArchParams, m: &MemoryParams) -> Result<f64> {
    check_drift(p)?;
    m.validate_composite()?;
    let (le, mm) = (p.lambda_e, p.mu_m);
    Ok(1.0 - le / (2.0 * mm) + le / 6.0 * (2.0 * lt(mm, m.t2) + lt(mm, m.t1)))
}

/// Average entanglement fidelity of a freshly generated pair stored for an
/// `Exp(lambda_m)` time before its move.
pub fn f_e_premove(lambda_m: f64, m: &MemoryParams) -> Result<f64> {
    move_waiting_dist(lambda_m)?;
    m.validate_composite()?;
    Ok(0.25 + lambda_m / 4.0 * (lt(lambda_m, m.t1) + 2.0 * lt(lambda_m, m.t2)))
}

/// The same quantity routed through the generic mixture average.
pub fn f_e_premove_via_dist(lambda_m: f64, m: &MemoryParams) -> Result<f64> {
    let f = avg_fidelity_over_dist(&move_waiting_dist(lambda_m)?, &composite(m)?);
    ent_fidelity_from_gate(f, 2)
}

pub fn f1_avg_via_dist(p: &ArchParams, m: &MemoryParams) -> Result<f64> {
    Ok(avg_fidelity_over_dist(&waiting_dist_sd(p)?, &composite(m)?))
}

pub fn f2_avg_via_dist(p: &ArchParams, m: &MemoryParams) -> Result<f64> {
    Ok(avg_fidelity_over_dist(&waiting_dist_dd(p)?, &composite(m)?))
}

fn shared_lambda_e(p_sd: &ArchParams, p_dd: &ArchParams) -> Result<()> {
    check_drift(p_sd)?;
    check_drift(p_dd)?;
    if p_sd.lambda_e != p_dd.lambda_e {
        return Err(Error::Hypothesis(format!(
            "both architectures must see the same request rate (lambda_e {} vs {})",
            p_sd.lambda_e, p_dd.lambda_e
        )));
    }
    Ok(())
}

/// Both sides of the SD-wins inequality (after cancelling `lambda_e / 2`):
/// SD has the higher average gate fidelity iff `lhs < rhs`.
pub fn composite_condition_sides(
    p_sd: &ArchParams,
    p_dd: &ArchParams,
    m_sd: &MemoryParams,
    m_dd: &MemoryParams,
) -> Result<(f64, f64)> {
    shared_lambda_e(p_sd, p_dd)?;
    m_sd.validate_composite()?;
    m_dd.validate_composite()?;
    let (me, mm1, mm2) = (p_sd.mu_e, p_sd.mu_m, p_dd.mu_m);
    let (t1a, t2a) = (m_sd.t1, m_sd.t2);
    let (t1b, t2b) = (m_dd.t1, m_dd.t2);
    let lhs = 1.0 / me + 1.0 / mm1
        - (2.0 * lt(me, t2a) + lt(me, t1a) + 2.0 * lt(mm1, t2a) + lt(mm1, t1a)) / 3.0;
    let rhs = 1.0 / mm2 - (2.0 * lt(mm2, t2b) + lt(mm2, t1b)) / 3.0;
    Ok((lhs, rhs))
}

/// True iff SD beats DD on average gate fidelity.
pub fn composite_condition(
    p_sd: &ArchParams,
    p_dd: &ArchParams,
    m_sd: &MemoryParams,
    m_dd: &MemoryParams,
) -> Result<bool> {
    let (lhs, rhs) = composite_condition_sides(p_sd, p_dd, m_sd, m_dd)?;
    Ok(lhs < rhs)
}

fn check_bound_hypothesis(p_sd: &ArchParams, p_dd: &ArchParams, t1_dd: f64) -> Result<()> {
    shared_lambda_e(p_sd, p_dd)?;
    let (me, mm1, mm2) = (p_sd.mu_e, p_sd.mu_m, p_dd.mu_m);
    if !(me > 1.0) {
        return Err(Error::Hypothesis(format!("mu_e must exceed 1 Hz, got {me}")));
    }
    if !(me < mm2 && mm2 < mm1) {
        return Err(Error::Hypothesis(format!(
            "need mu_e < mu_m(DD) < mu_m(SD), got {me}, {mm2}, {mm1}"
        )));
    }
    if !(t1_dd > 0.0) {
        return Err(Error::param("t1_dd", format!("lifetime must be positive, got {t1_dd}")));
    }
    Ok(())
}

/// Threshold on the SD dephasing time above which SD is guaranteed to win,
/// for any SD `T1 >= T2` and any DD `T2 <= T1`:
///
/// `T2_sd > mu_m2 (mu_m2 T1_dd + 1) (mu_e + mu_m1)^2 / (mu_e mu_m1)^2
///          - (mu_e + mu_m1) / (sqrt(2) mu_e mu_m1)`.
pub fn sd_memory_sufficient_bound(p_sd: &ArchParams, p_dd: &ArchParams, t1_dd: f64) -> Result<f64> {
    check_bound_hypothesis(p_sd, p_dd, t1_dd)?;
    let (me, mm1, mm2) = (p_sd.mu_e, p_sd.mu_m, p_dd.mu_m);
    let s = me + mm1;
    let prod = me * mm1;
    Ok(mm2 * (mm2 * t1_dd + 1.0) * s * s / (prod * prod) - s / (std::f64::consts::SQRT_2 * prod))
}

/// The threshold with `(mu_e + mu_m1)` to the first power in the leading
/// term. It is smaller than [`sd_memory_sufficient_bound`] and is not a
/// sufficient condition in general.
pub fn sd_memory_bound_as_printed(p_sd: &ArchParams, p_dd: &ArchParams, t1_dd: f64) -> Result<f64> {
    check_bound_hypothesis(p_sd, p_dd, t1_dd)?;
    let (me, mm1, mm2) = (p_sd.mu_e, p_sd.mu_m, p_dd.mu_m);
    let s = me + mm1;
    let prod = me * mm1;
    Ok(mm2 * (mm2 * t1_dd + 1.0) * s / (prod * prod) - s / (std::f64::consts::SQRT_2 * prod))
}

/// `(x/(ax+1) > y/(ay+1), 1/(a(ax+1)) + 1/(b(bx+1)) < 2/(c(cx+1)))` with
/// `c = sqrt(2) ab/(a+b)`. The first lemma is evaluated at `(a, x, y)`, the
/// second at `(a, b, x)`.
pub fn lemma_inequalities_check(a: f64, b: f64, x: f64, y: f64) -> Result<(bool, bool)> {
    for (name, v) in [("a", a), ("b", b), ("x", x), ("y", y)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::param(name, format!("must be positive, got {v}")));
        }
    }
    let first = lt(a, x) > lt(a, y);
    let c = std::f64::consts::SQRT_2 * a * b / (a + b);
    let second = 1.0 / (a * (a * x + 1.0)) + 1.0 / (b * (b * x + 1.0)) < 2.0 / (c * (c * x + 1.0));
    Ok((first, second))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Winner {
    SD,
    DD,
    Tie,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub f_avg_sd: f64,
    pub f_avg_dd: f64,
    pub f_e_premove_sd: f64,
    pub f_e_premove_dd: f64,
    pub winner: Winner,
}

impl FidelityReport {
    pub fn difference(&self) -> f64 {
        self.f_avg_sd - self.f_avg_dd
    }
}

pub fn compare(
    p_sd: &ArchParams,
    p_dd: &ArchParams,
    m_sd: &MemoryParams,
    m_dd: &MemoryParams,
) -> Result<FidelityReport> {
    let f_avg_sd = f1_avg(p_sd, m_sd)?;
    let f_avg_dd = f2_avg(p_dd, m_dd)?;
    let diff = f_avg_sd - f_avg_dd;
    let winner = if diff.abs() < TIE_TOL {
        Winner::Tie
    } else if diff > 0.0 {
        Winner::SD
    } else {
        Winner::DD
    };
    Ok(FidelityReport {
        f_avg_sd,
        f_avg_dd,
        f_e_premove_sd: f_e_premove(p_sd.lambda_m, m_sd)?,
        f_e_premove_dd: f_e_premove(p_dd.lambda_m, m_dd)?,
        winner,
    })
}
