//! Waiting-time laws: a point mass at zero plus a finite mixture of
//! exponential densities `coefficient * e^{-rate t}`.

use serde::{Deserialize, Serialize};

use crate::qbd::{check_drift, ArchParams};
use crate::{Error, Result};

pub const MASS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpComponent {
    pub coefficient: f64,
    pub rate: f64,
}

impl ExpComponent {
    pub fn mass(&self) -> f64 {
        self.coefficient / self.rate
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaitingTimeDist {
    atom: f64,
    components: Vec<ExpComponent>,
}

impl WaitingTimeDist {
    pub fn new(atom: f64, components: Vec<(f64, f64)>) -> Result<Self> {
        let components: Vec<ExpComponent> = components
            .into_iter()
            .map(|(coefficient, rate)| ExpComponent { coefficient, rate })
            .collect();
        if !(0.0..=1.0).contains(&atom) {
            return Err(Error::InvalidDistribution(format!("atom {atom} outside [0, 1]")));
        }
        for c in &components {
            if !(c.rate > 0.0 && c.rate.is_finite()) {
                return Err(Error::InvalidDistribution(format!("rate {} must be positive", c.rate)));
            }
            if !(c.coefficient >= 0.0 && c.coefficient.is_finite()) {
                return Err(Error::InvalidDistribution(format!(
                    "coefficient {} must be non-negative",
                    c.coefficient
                )));
            }
        }
        let total = atom + components.iter().map(ExpComponent::mass).sum::<f64>();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidDistribution(format!("total mass {total} is not 1")));
        }
        Ok(Self { atom, components })
    }

    /// Exponential law with rate `rate`.
    pub fn exponential(rate: f64) -> Result<Self> {
        Self::new(0.0, vec![(rate, rate)])
    }

    pub fn atom(&self) -> f64 {
        self.atom
    }

    pub fn components(&self) -> &[ExpComponent] {
        &self.components
    }

    pub fn total_mass(&self) -> f64 {
        self.atom + self.components.iter().map(ExpComponent::mass).sum::<f64>()
    }

    /// Density of the continuous part (the atom is excluded).
    pub fn pdf(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        self.components
            .iter()
            .map(|c| c.coefficient * (-c.rate * t).exp())
            .sum()
    }

    /// `P(W <= t)`.
    pub fn cdf(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        self.atom
            + self
                .components
                .iter()
                .map(|c| -c.mass() * (-c.rate * t).exp_m1())
                .sum::<f64>()
    }

    /// `P(W < t)`.
    pub fn cdf_left(&self, t: f64) -> f64 {
        if t <= 0.0 {
            0.0
        } else {
            self.cdf(t)
        }
    }

    pub fn mean(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.coefficient / (c.rate * c.rate))
            .sum()
    }

    pub fn min_rate(&self) -> Option<f64> {
        self.components.iter().map(|c| c.rate).reduce(f64::min)
    }
}

/// Computation waits in SD: blocked while the request in service is in
/// generation or move execution.
pub fn waiting_dist_sd(p: &ArchParams) -> Result<WaitingTimeDist> {
    check_drift(p)?;
    let (le, me, mm) = (p.lambda_e, p.mu_e, p.mu_m);
    let atom = 1.0 - le / me - le / mm;
    WaitingTimeDist::new(atom, vec![(le, me), (le, mm)])
}

/// Computation waits in DD: blocked only during move execution.
pub fn waiting_dist_dd(p: &ArchParams) -> Result<WaitingTimeDist> {
    check_drift(p)?;
    let (le, mm) = (p.lambda_e, p.mu_m);
    WaitingTimeDist::new(1.0 - le / mm, vec![(le, mm)])
}

/// Storage time of a freshly entangled qubit before its move request.
pub fn move_waiting_dist(lambda_m: f64) -> Result<WaitingTimeDist> {
    if !(lambda_m > 0.0 && lambda_m.is_finite()) {
        return Err(Error::param("lambda_m", format!("rate must be positive, got {lambda_m}")));
    }
    WaitingTimeDist::exponential(lambda_m)
}
