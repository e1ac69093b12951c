//! JSON experiment configuration.
//!
//! ```json
//! {
//!   "arch_sd":   { "lambda_e": 1, "mu_e": 10, "lambda_m": 1000, "mu_m": 1667, "lambda_c": 150, "mu_c": "inf" },
//!   "arch_dd":   { "lambda_e": 1, "mu_e": 10, "lambda_m": 1000, "mu_m": 700,  "lambda_c": 150, "mu_c": "inf" },
//!   "memory_sd": { "t1": 0.00286, "t2": 0.001 },
//!   "memory_dd": { "t1": 0.00286, "t2": 0.001 },
//!   "gate_noise": { "p_rcx": 0.005 },
//!   "electron_reinit": false,
//!   "sweep": { "variable": "mu_c", "values": { "start": 1e3, "stop": 1e5, "count": 5, "scale": "log" } },
//!   "sim": { "duration": 1e5, "seed": 1, "replications": 5, "warmup_fraction": 0.05 }
//! }
//! ```
//!
//! Rates are in Hz and times in seconds. Unknown keys anywhere are errors.

use std::path::Path;

use qarch_core::circuits::GateNoiseTable;
use qarch_core::qbd::{rate_or_inf, ArchParams, Architecture};
use qarch_core::quantum::MemoryParams;
use qarch_core::sim::DEFAULT_WARMUP_FRACTION;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

fn infinite() -> f64 {
    f64::INFINITY
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RateSection {
    pub lambda_e: f64,
    pub mu_e: f64,
    pub lambda_m: f64,
    pub mu_m: f64,
    #[serde(default)]
    pub lambda_c: f64,
    #[serde(default = "infinite", with = "rate_or_inf")]
    pub mu_c: f64,
}

impl RateSection {
    pub fn params(&self, arch: Architecture) -> qarch_core::Result<ArchParams> {
        ArchParams::new(arch, self.lambda_e, self.mu_e, self.lambda_m, self.mu_m)?
            .with_computation(self.lambda_c, self.mu_c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSection {
    pub duration: f64,
    pub seed: u64,
    pub replications: usize,
    pub warmup_fraction: f64,
}

impl Default for SimSection {
    fn default() -> Self {
        Self {
            duration: 1e5,
            seed: 0,
            replications: 5,
            warmup_fraction: DEFAULT_WARMUP_FRACTION,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    LambdaE,
    MuE,
    LambdaM,
    MuMSd,
    MuMDd,
    LambdaC,
    MuC,
    #[serde(alias = "T1_sd")]
    T1Sd,
    #[serde(alias = "T2_sd")]
    T2Sd,
    #[serde(alias = "T1_dd")]
    T1Dd,
    #[serde(alias = "T2_dd")]
    T2Dd,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::LambdaE => "lambda_e",
            SweepVariable::MuE => "mu_e",
            SweepVariable::LambdaM => "lambda_m",
            SweepVariable::MuMSd => "mu_m_sd",
            SweepVariable::MuMDd => "mu_m_dd",
            SweepVariable::LambdaC => "lambda_c",
            SweepVariable::MuC => "mu_c",
            SweepVariable::T1Sd => "t1_sd",
            SweepVariable::T2Sd => "t2_sd",
            SweepVariable::T1Dd => "t1_dd",
            SweepVariable::T2Dd => "t2_dd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Value(#[serde(with = "rate_or_inf")] pub f64);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepValues {
    List(Vec<Value>),
    Range {
        start: f64,
        stop: f64,
        count: usize,
        scale: Scale,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub values: SweepValues,
}

impl SweepSpec {
    pub fn points(&self) -> CliResult<Vec<f64>> {
        let points: Vec<f64> = match &self.values {
            SweepValues::List(v) => v.iter().map(|x| x.0).collect(),
            &SweepValues::Range { start, stop, count, scale } => {
                if count == 0 || !start.is_finite() || !stop.is_finite() {
                    return Err(CliError::Config("sweep range needs a positive count and finite ends".into()));
                }
                if scale == Scale::Log && !(start > 0.0 && stop > 0.0) {
                    return Err(CliError::Config("log sweep ends must be positive".into()));
                }
                (0..count)
                    .map(|i| {
                        if i == 0 {
                            return start;
                        }
                        if i == count - 1 {
                            return stop;
                        }
                        let f = i as f64 / (count - 1) as f64;
                        match scale {
                            Scale::Linear => start + f * (stop - start),
                            Scale::Log => (start.ln() + f * (stop.ln() - start.ln())).exp(),
                        }
                    })
                    .collect()
            }
        };
        if points.is_empty() {
            return Err(CliError::Config("sweep has no values".into()));
        }
        Ok(points)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub arch_sd: RateSection,
    pub arch_dd: RateSection,
    pub memory_sd: MemoryParams,
    pub memory_dd: MemoryParams,
    #[serde(default)]
    pub gate_noise: GateNoiseTable,
    #[serde(default)]
    pub electron_reinit: bool,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
    #[serde(default)]
    pub sim: SimSection,
}

/// One fully resolved sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub index: usize,
    pub value: Option<f64>,
    pub sd: ArchParams,
    pub dd: ArchParams,
    pub memory_sd: MemoryParams,
    pub memory_dd: MemoryParams,
}

impl Config {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let cfg: Config = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |e: qarch_core::Error| CliError::Config(e.to_string());
        self.arch_sd.params(Architecture::SD).map_err(bad)?;
        self.arch_dd.params(Architecture::DD).map_err(bad)?;
        self.memory_sd.validate_composite().map_err(bad)?;
        self.memory_dd.validate_composite().map_err(bad)?;
        self.gate_noise.validate().map_err(bad)?;
        let s = &self.sim;
        if !(s.duration > 0.0 && s.duration.is_finite()) || s.replications == 0 || !(0.0..1.0).contains(&s.warmup_fraction) {
            return Err(CliError::Config(
                "sim needs a positive duration, at least one replication and warmup_fraction in [0, 1)".into(),
            ));
        }
        self.points().map(|_| ())
    }

    /// Sweep points in order; a config without a sweep yields one point.
    pub fn points(&self) -> CliResult<Vec<Point>> {
        let base = |index, value| -> CliResult<Point> {
            let bad = |e: qarch_core::Error| CliError::Config(e.to_string());
            Ok(Point {
                index,
                value,
                sd: self.arch_sd.params(Architecture::SD).map_err(bad)?,
                dd: self.arch_dd.params(Architecture::DD).map_err(bad)?,
                memory_sd: self.memory_sd,
                memory_dd: self.memory_dd,
            })
        };
        let Some(sweep) = &self.sweep else {
            return Ok(vec![base(0, None)?]);
        };
        sweep
            .points()?
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                let mut p = base(i, Some(v))?;
                apply(&mut p, sweep.variable, v)?;
                Ok(p)
            })
            .collect()
    }
}

fn apply(p: &mut Point, var: SweepVariable, v: f64) -> CliResult<()> {
    use SweepVariable::*;
    match var {
        LambdaE => (p.sd.lambda_e, p.dd.lambda_e) = (v, v),
        MuE => (p.sd.mu_e, p.dd.mu_e) = (v, v),
        LambdaM => (p.sd.lambda_m, p.dd.lambda_m) = (v, v),
        MuMSd => p.sd.mu_m = v,
        MuMDd => p.dd.mu_m = v,
        LambdaC => (p.sd.lambda_c, p.dd.lambda_c) = (v, v),
        MuC => (p.sd.mu_c, p.dd.mu_c) = (v, v),
        T1Sd => p.memory_sd.t1 = v,
        T2Sd => p.memory_sd.t2 = v,
        T1Dd => p.memory_dd.t1 = v,
        T2Dd => p.memory_dd.t2 = v,
    }
    let bad = |e: qarch_core::Error| CliError::Config(format!("sweep value {v} for {}: {e}", var.name()));
    p.sd.validate().map_err(bad)?;
    p.dd.validate().map_err(bad)?;
    p.memory_sd.validate_composite().map_err(bad)?;
    p.memory_dd.validate_composite().map_err(bad)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const FIG5: &str = r#"{
        "arch_sd": { "lambda_e": 1, "mu_e": 10, "lambda_m": 1000, "mu_m": 1667, "lambda_c": 150, "mu_c": "inf" },
        "arch_dd": { "lambda_e": 1, "mu_e": 10, "lambda_m": 1000, "mu_m": 700, "lambda_c": 150 },
        "memory_sd": { "t1": 0.00286, "t2": 0.001 },
        "memory_dd": { "t1": 0.00286, "t2": 0.001 }
    }"#;

    fn with_sweep(sweep: &str) -> String {
        FIG5.trim_end().trim_end_matches('}').to_string() + &format!(r#", "sweep": {sweep} }}"#)
    }

    #[test]
    fn minimal_config_uses_defaults() {
        let cfg = Config::from_json(FIG5).unwrap();
        assert_eq!(cfg.arch_dd.mu_c, f64::INFINITY);
        assert_eq!(cfg.gate_noise, GateNoiseTable::default());
        assert_eq!(cfg.sim.replications, 5);
        assert_eq!(cfg.points().unwrap().len(), 1);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let typo = FIG5.replace("\"lambda_c\": 150,", "\"lamda_c\": 150,");
        assert!(matches!(Config::from_json(&typo), Err(CliError::Config(_))));
        let extra = FIG5.replace("\"memory_sd\"", "\"bogus\": 1, \"memory_sd\"");
        assert!(Config::from_json(&extra).is_err());
    }

    #[test]
    fn sweep_forms() {
        let cfg = Config::from_json(&with_sweep(r#"{ "variable": "mu_c", "values": [1000, "inf"] }"#)).unwrap();
        let pts = cfg.points().unwrap();
        assert_eq!(pts[1].sd.mu_c, f64::INFINITY);
        let cfg = Config::from_json(&with_sweep(
            r#"{ "variable": "T2_dd", "values": { "start": 1e-5, "stop": 1e-3, "count": 3, "scale": "log" } }"#,
        ))
        .unwrap();
        let t2: Vec<f64> = cfg.points().unwrap().iter().map(|p| p.memory_dd.t2).collect();
        assert!((t2[1] - 1e-4).abs() < 1e-15);
        assert!(Config::from_json(&with_sweep(r#"{ "variable": "mu_c", "values": [] }"#)).is_err());
        assert!(Config::from_json(&with_sweep(r#"{ "variable": "mu_e", "values": [-1] }"#)).is_err());
        assert!(Config::from_json(&with_sweep(r#"{ "variable": "mu_x", "values": [1] }"#)).is_err());
    }
}
