//! The `analyze`, `simulate` and `circuit` subcommands.

use std::io::Write;

use qarch_core::circuits::{
    avg_post_move_ent_fidelity, paper_avg_post_move_ent_fidelity, printed_coefficients, GateNoiseTable,
    PostMoveModel, PAPER_ENT_COEFFICIENTS,
};
use qarch_core::fidelity::{f1_avg, f2_avg, f_e_premove};
use qarch_core::qbd::{mean_drift_ok, ArchParams, Architecture};
use qarch_core::quantum::MemoryParams;
use qarch_core::sim::{replication_seed, run_replications, SimConfig};
use qarch_core::stats::MeanEstimate;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Config, Point, SweepVariable};
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Ok,
    UnstableSd,
    UnstableDd,
    Unstable,
}

impl Status {
    fn of(sd_ok: bool, dd_ok: bool) -> Self {
        match (sd_ok, dd_ok) {
            (true, true) => Status::Ok,
            (false, true) => Status::UnstableSd,
            (true, false) => Status::UnstableDd,
            (false, false) => Status::Unstable,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyzeRow {
    pub index: usize,
    pub variable: &'static str,
    pub value: Option<f64>,
    pub f1_avg: Option<f64>,
    pub f2_avg: Option<f64>,
    pub difference: Option<f64>,
    pub f_e_premove_sd: Option<f64>,
    pub f_e_premove_dd: Option<f64>,
    pub status: Status,
}

fn variable(cfg: &Config) -> &'static str {
    cfg.sweep.as_ref().map_or("none", |s| s.variable.name())
}

/// Closed-form `mu_c = inf` fidelities for every sweep point.
pub fn analyze(cfg: &Config) -> CliResult<Vec<AnalyzeRow>> {
    let var = variable(cfg);
    let rows = cfg
        .points()?
        .par_iter()
        .map(|p| analyze_point(p, var))
        .collect::<CliResult<Vec<_>>>()?;
    if rows.iter().all(|r| r.status == Status::Unstable) {
        return Err(CliError::AllUnstable);
    }
    Ok(rows)
}

fn analyze_point(p: &Point, var: &'static str) -> CliResult<AnalyzeRow> {
    let (sd_ok, dd_ok) = (mean_drift_ok(&p.sd), mean_drift_ok(&p.dd));
    let f1 = sd_ok.then(|| f1_avg(&p.sd, &p.memory_sd)).transpose()?;
    let f2 = dd_ok.then(|| f2_avg(&p.dd, &p.memory_dd)).transpose()?;
    Ok(AnalyzeRow {
        index: p.index,
        variable: var,
        value: p.value,
        f1_avg: f1,
        f2_avg: f2,
        difference: f1.zip(f2).map(|(a, b)| a - b),
        f_e_premove_sd: sd_ok.then(|| f_e_premove(p.sd.lambda_m, &p.memory_sd)).transpose()?,
        f_e_premove_dd: dd_ok.then(|| f_e_premove(p.dd.lambda_m, &p.memory_dd)).transpose()?,
        status: Status::of(sd_ok, dd_ok),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulateRow {
    pub index: usize,
    pub variable: &'static str,
    pub value: Option<f64>,
    pub sim_f1: Option<f64>,
    pub sim_f1_se: Option<f64>,
    pub sim_f2: Option<f64>,
    pub sim_f2_se: Option<f64>,
    pub sim_difference: Option<f64>,
    pub sim_f_e_sd: Option<f64>,
    pub sim_f_e_sd_se: Option<f64>,
    pub sim_f_e_dd: Option<f64>,
    pub sim_f_e_dd_se: Option<f64>,
    pub analytic_f1: Option<f64>,
    pub analytic_f2: Option<f64>,
    pub check_f1: Option<&'static str>,
    pub check_f2: Option<&'static str>,
    pub status: Status,
}

/// Whether a configuration has a stationary regime worth simulating: the
/// request chain must be stable and the processor not overloaded.
pub fn simulable(p: &ArchParams) -> bool {
    let blocking = match p.arch {
        Architecture::SD => p.lambda_e / p.mu_e + p.lambda_e / p.mu_m,
        Architecture::DD => p.lambda_e / p.mu_m,
    };
    let computing = if p.mu_c.is_finite() { p.lambda_c / p.mu_c } else { 0.0 };
    mean_drift_ok(p) && blocking + computing < 1.0
}

struct ArchSim {
    f_avg: Option<MeanEstimate>,
    f_e: Option<MeanEstimate>,
}

fn simulate_arch(cfg: &Config, p: &ArchParams, m: &MemoryParams, seed: u64) -> CliResult<ArchSim> {
    let sim = SimConfig {
        params: *p,
        memory: *m,
        duration: cfg.sim.duration,
        seed,
        replications: cfg.sim.replications,
        warmup_fraction: cfg.sim.warmup_fraction,
    };
    let r = run_replications(&sim)?;
    if cfg.sim.replications >= 2 {
        return Ok(ArchSim { f_avg: r.f_avg, f_e: r.f_e });
    }
    let run = &r.runs[0];
    Ok(ArchSim {
        f_avg: run.f_avg_estimate,
        f_e: run.f_e_estimate,
    })
}

fn check(est: Option<MeanEstimate>, exact: Option<f64>) -> Option<&'static str> {
    let (est, exact) = (est?, exact?);
    Some(if est.within(exact, 3.0) { "PASS" } else { "FAIL" })
}

/// Monte Carlo estimates per sweep point, with the closed forms alongside
/// whenever `mu_c = inf`. Both architectures at a point share a seed.
pub fn simulate(cfg: &Config) -> CliResult<Vec<SimulateRow>> {
    let var = variable(cfg);
    let rows = cfg
        .points()?
        .par_iter()
        .map(|p| {
            let seed = replication_seed(cfg.sim.seed, p.index);
            let (sd_ok, dd_ok) = (simulable(&p.sd), simulable(&p.dd));
            let sd = sd_ok.then(|| simulate_arch(cfg, &p.sd, &p.memory_sd, seed)).transpose()?;
            let dd = dd_ok.then(|| simulate_arch(cfg, &p.dd, &p.memory_dd, seed)).transpose()?;
            let analytic_f1 = (sd_ok && p.sd.mu_c.is_infinite()).then(|| f1_avg(&p.sd, &p.memory_sd)).transpose()?;
            let analytic_f2 = (dd_ok && p.dd.mu_c.is_infinite()).then(|| f2_avg(&p.dd, &p.memory_dd)).transpose()?;
            let f1 = sd.as_ref().and_then(|s| s.f_avg);
            let f2 = dd.as_ref().and_then(|s| s.f_avg);
            let fe_sd = sd.as_ref().and_then(|s| s.f_e);
            let fe_dd = dd.as_ref().and_then(|s| s.f_e);
            Ok(SimulateRow {
                index: p.index,
                variable: var,
                value: p.value,
                sim_f1: f1.map(|e| e.mean),
                sim_f1_se: f1.map(|e| e.std_err),
                sim_f2: f2.map(|e| e.mean),
                sim_f2_se: f2.map(|e| e.std_err),
                sim_difference: f1.zip(f2).map(|(a, b)| a.mean - b.mean),
                sim_f_e_sd: fe_sd.map(|e| e.mean),
                sim_f_e_sd_se: fe_sd.map(|e| e.std_err),
                sim_f_e_dd: fe_dd.map(|e| e.mean),
                sim_f_e_dd_se: fe_dd.map(|e| e.std_err),
                analytic_f1,
                analytic_f2,
                check_f1: check(f1, analytic_f1),
                check_f2: check(f2, analytic_f2),
                status: Status::of(sd_ok, dd_ok),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    if rows.iter().all(|r| r.status == Status::Unstable) {
        return Err(CliError::AllUnstable);
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coefficients {
    pub constant: f64,
    pub t1: f64,
    pub t2: f64,
}

impl From<(f64, f64, f64)> for Coefficients {
    fn from((constant, t1, t2): (f64, f64, f64)) -> Self {
        Self { constant, t1, t2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircuitRow {
    pub lambda_m: f64,
    pub premove_sd: f64,
    pub premove_dd: f64,
    pub postmove_circuit_sd: f64,
    pub postmove_circuit_dd: f64,
    pub postmove_printed_sd: f64,
    pub postmove_quoted_sd: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircuitReport {
    pub gate_noise: GateNoiseTable,
    pub electron_reinit: bool,
    /// Entanglement-fidelity coefficients `(constant, T1, T2)`.
    pub quoted_coefficients: Coefficients,
    pub printed_coefficients: Coefficients,
    pub circuit_coefficients_sd: Coefficients,
    pub circuit_coefficients_dd: Coefficients,
    pub quoted_asymptote: f64,
    pub printed_asymptote: f64,
    pub circuit_asymptote_sd: f64,
    pub circuit_asymptote_dd: f64,
    pub max_abs_printed_vs_circuit: f64,
    pub max_abs_quoted_vs_circuit: f64,
    pub sweep: Vec<CircuitRow>,
}

fn ent_level((c0, c1, c2): (f64, f64, f64)) -> Coefficients {
    ((3.0 * c0 - 1.0) / 2.0, 1.5 * c1, 1.5 * c2).into()
}

/// Pre- and post-move entanglement fidelities for the SD and DD moves over
/// a `lambda_m` grid, comparing the circuit-derived closed form with the
/// symbolic expression and the quoted numeric coefficients.
pub fn circuit(cfg: &Config) -> CliResult<CircuitReport> {
    let noise = cfg.gate_noise;
    let sd = PostMoveModel::from_circuit(&noise, Architecture::SD, cfg.electron_reinit)?;
    let dd = PostMoveModel::from_circuit(&noise, Architecture::DD, cfg.electron_reinit)?;
    let grid: Vec<f64> = match &cfg.sweep {
        Some(s) if s.variable == SweepVariable::LambdaM => s.points()?,
        Some(s) => {
            return Err(CliError::Config(format!(
                "circuit sweeps lambda_m only, got {}",
                s.variable.name()
            )))
        }
        None => (0..=10).map(|i| 10f64.powf(1.0 + 0.5 * i as f64)).collect(),
    };
    let (m_sd, m_dd) = (cfg.memory_sd, cfg.memory_dd);
    let sweep = grid
        .iter()
        .map(|&lm| -> CliResult<CircuitRow> {
            Ok(CircuitRow {
                lambda_m: lm,
                premove_sd: f_e_premove(lm, &m_sd)?,
                premove_dd: f_e_premove(lm, &m_dd)?,
                postmove_circuit_sd: sd.avg_ent_fidelity(lm, &m_sd)?,
                postmove_circuit_dd: dd.avg_ent_fidelity(lm, &m_dd)?,
                postmove_printed_sd: avg_post_move_ent_fidelity(&noise, lm, &m_sd)?,
                postmove_quoted_sd: paper_avg_post_move_ent_fidelity(lm, &m_sd)?,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let max_dev = |f: fn(&CircuitRow) -> f64| {
        sweep
            .iter()
            .map(|r| (f(r) - r.postmove_circuit_sd).abs())
            .fold(0.0, f64::max)
    };
    let printed = ent_level(printed_coefficients(&noise));
    let (q0, q1, q2) = PAPER_ENT_COEFFICIENTS;
    Ok(CircuitReport {
        gate_noise: noise,
        electron_reinit: cfg.electron_reinit,
        quoted_coefficients: PAPER_ENT_COEFFICIENTS.into(),
        printed_coefficients: printed,
        circuit_coefficients_sd: sd.ent_coefficients().into(),
        circuit_coefficients_dd: dd.ent_coefficients().into(),
        quoted_asymptote: q0 + q1 + q2,
        printed_asymptote: printed.constant + printed.t1 + printed.t2,
        circuit_asymptote_sd: sd.ent_asymptote(),
        circuit_asymptote_dd: dd.ent_asymptote(),
        max_abs_printed_vs_circuit: max_dev(|r| r.postmove_printed_sd),
        max_abs_quoted_vs_circuit: max_dev(|r| r.postmove_quoted_sd),
        sweep,
    })
}

pub fn write_rows<T: Serialize, W: Write>(rows: &[T], format: Format, out: W) -> CliResult<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => write_json(&rows, out)?,
    }
    Ok(())
}

pub fn write_json<T: Serialize + ?Sized, W: Write>(value: &T, mut out: W) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}
