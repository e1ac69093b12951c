//! The M/HYPO3/1 quasi-birth-death chain.
//!
//! The level counts outstanding entanglement requests; the phase of the
//! request in service is 1 (generation, rate `mu_e`), 2 (waiting for the
//! move request, rate `lambda_m`) or 3 (move execution, rate `mu_m`).
//! Requests arrive as a Poisson stream of rate `lambda_e`. Because `A0`
//! has rank one the rate matrix is available in closed form.

use nalgebra::{DMatrix, DVector, Matrix3, RowVector3, Vector3};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Architecture {
    #[serde(alias = "sd")]
    SD,
    #[serde(alias = "dd")]
    DD,
}

impl std::fmt::Display for Architecture {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Architecture::SD => "SD",
            Architecture::DD => "DD",
        })
    }
}

/// Queueing rates in Hz. `mu_c` may be `f64::INFINITY`, meaning
/// computations finish the instant they are allowed to run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArchParams {
    pub arch: Architecture,
    pub lambda_e: f64,
    pub mu_e: f64,
    pub lambda_m: f64,
    pub mu_m: f64,
    #[serde(default)]
    pub lambda_c: f64,
    #[serde(default = "infinite", with = "rate_or_inf")]
    pub mu_c: f64,
}

fn infinite() -> f64 {
    f64::INFINITY
}

/// Serializes `f64::INFINITY` as the string `"inf"`.
pub mod rate_or_inf {
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &f64, s: S) -> Result<S::Ok, S::Error> {
        if value.is_infinite() && *value > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*value)
        }
    }

    struct RateVisitor;

    impl Visitor<'_> for RateVisitor {
        type Value = f64;

        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("a positive number or the string \"inf\"")
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
            Ok(v)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
            if v.eq_ignore_ascii_case("inf") {
                Ok(f64::INFINITY)
            } else {
                Err(E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        d.deserialize_any(RateVisitor)
    }
}

impl ArchParams {
    pub fn new(arch: Architecture, lambda_e: f64, mu_e: f64, lambda_m: f64, mu_m: f64) -> Result<Self> {
        let p = Self {
            arch,
            lambda_e,
            mu_e,
            lambda_m,
            mu_m,
            lambda_c: 0.0,
            mu_c: f64::INFINITY,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_computation(mut self, lambda_c: f64, mu_c: f64) -> Result<Self> {
        self.lambda_c = lambda_c;
        self.mu_c = mu_c;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("lambda_e", self.lambda_e),
            ("mu_e", self.mu_e),
            ("lambda_m", self.lambda_m),
            ("mu_m", self.mu_m),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::param(name, format!("rate must be positive and finite, got {v}")));
            }
        }
        if !(self.lambda_c >= 0.0 && self.lambda_c.is_finite()) {
            return Err(Error::param(
                "lambda_c",
                format!("rate must be non-negative and finite, got {}", self.lambda_c),
            ));
        }
        if !(self.mu_c > 0.0) {
            return Err(Error::param("mu_c", format!("rate must be positive or inf, got {}", self.mu_c)));
        }
        Ok(())
    }

    /// Mean time a request spends in service, `1/mu_e + 1/lambda_m + 1/mu_m`.
    pub fn mean_service(&self) -> f64 {
        1.0 / self.mu_e + 1.0 / self.lambda_m + 1.0 / self.mu_m
    }

    pub fn load(&self) -> f64 {
        self.lambda_e * self.mean_service()
    }

    pub fn alpha(&self) -> f64 {
        self.lambda_e + self.mu_e
    }

    pub fn beta(&self) -> f64 {
        self.lambda_e + self.lambda_m
    }

    /// `lambda_e + mu_m`, not to be confused with the damping parameter.
    pub fn drift_gamma(&self) -> f64 {
        self.lambda_e + self.mu_m
    }
}

/// `1/lambda_e > 1/mu_e + 1/lambda_m + 1/mu_m` (strict).
pub fn mean_drift_ok(p: &ArchParams) -> bool {
    1.0 / p.lambda_e > p.mean_service()
}

pub fn check_drift(p: &ArchParams) -> Result<()> {
    p.validate()?;
    if mean_drift_ok(p) {
        Ok(())
    } else {
        Err(Error::Unstable {
            inter_arrival: 1.0 / p.lambda_e,
            service: p.mean_service(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QbdBlocks {
    pub b00: f64,
    pub b01: RowVector3<f64>,
    pub b10: Vector3<f64>,
    /// Level down (move completion).
    pub a0: Matrix3<f64>,
    /// Within level.
    pub a1: Matrix3<f64>,
    /// Level up (arrival).
    pub a2: Matrix3<f64>,
}

pub fn build_blocks(p: &ArchParams) -> QbdBlocks {
    let (le, me, lm, mm) = (p.lambda_e, p.mu_e, p.lambda_m, p.mu_m);
    let mut a0 = Matrix3::zeros();
    a0[(2, 0)] = mm;
    QbdBlocks {
        b00: -le,
        b01: RowVector3::new(le, 0.0, 0.0),
        b10: Vector3::new(0.0, 0.0, mm),
        a0,
        a1: Matrix3::new(
            -p.alpha(), me, 0.0, //
            0.0, -p.beta(), lm, //
            0.0, 0.0, -p.drift_gamma(),
        ),
        a2: Matrix3::from_diagonal_element(le),
    }
}

/// Explicit minimal solution of `A2 + R A1 + R^2 A0 = 0`.
pub fn rate_matrix(p: &ArchParams) -> Result<Matrix3<f64>> {
    check_drift(p)?;
    let (le, me, lm, mm) = (p.lambda_e, p.mu_e, p.lambda_m, p.mu_m);
    let (b, g) = (p.beta(), p.drift_gamma());
    let scale = le / (lm * me * mm);
    Ok(Matrix3::new(
        b * g, g * me, me * lm, //
        le * (g + lm), g * me, me * lm, //
        le * b, le * me, me * lm,
    ) * scale)
}

/// `R = -A2 (A1 + A2 1 u)^{-1}` with `u = (1, 0, 0)`, valid because `A0`
/// is the rank-one matrix `mu_m e_3 u`.
pub fn rate_matrix_via_inverse(blocks: &QbdBlocks) -> Result<Matrix3<f64>> {
    let e_u = Vector3::from_element(1.0) * RowVector3::new(1.0, 0.0, 0.0);
    let m = blocks.a1 + blocks.a2 * e_u;
    let inv = m.try_inverse().ok_or(Error::Singular)?;
    Ok(-blocks.a2 * inv)
}

pub fn quadratic_residual(blocks: &QbdBlocks, r: &Matrix3<f64>) -> f64 {
    (blocks.a2 + r * blocks.a1 + r * r * blocks.a0).abs().max()
}

pub fn spectral_radius(m: &Matrix3<f64>) -> f64 {
    m.complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QbdSolution {
    pub r: Matrix3<f64>,
    pub pi0: f64,
    /// `(pi_{1/1}, pi_{1/2}, pi_{1/3})`.
    pub pi1: RowVector3<f64>,
    pub phase1_mass: f64,
    pub phase2_mass: f64,
    pub phase3_mass: f64,
}

impl QbdSolution {
    /// Stationary probabilities of level `n >= 1`: `pi_1 R^{n-1}`.
    pub fn level(&self, n: usize) -> RowVector3<f64> {
        assert!(n >= 1, "level 0 is the scalar pi0");
        let mut v = self.pi1;
        for _ in 1..n {
            v *= self.r;
        }
        v
    }

    /// `pi0 + pi1 (I - R)^{-1} 1`, which must equal one.
    pub fn total_mass(&self) -> Result<f64> {
        let inv = (Matrix3::identity() - self.r).try_inverse().ok_or(Error::Singular)?;
        Ok(self.pi0 + (self.pi1 * inv * Vector3::from_element(1.0))[(0, 0)])
    }

    /// Aggregate mass per phase from the geometric tail.
    pub fn phase_masses_from_tail(&self) -> Result<RowVector3<f64>> {
        let inv = (Matrix3::identity() - self.r).try_inverse().ok_or(Error::Singular)?;
        Ok(self.pi1 * inv)
    }
}

pub fn boundary_probs(p: &ArchParams) -> Result<QbdSolution> {
    let r = rate_matrix(p)?;
    let (le, me, lm, mm) = (p.lambda_e, p.mu_e, p.lambda_m, p.mu_m);
    let delta = lm * me * mm - le * lm * me - le * lm * mm - le * me * mm;
    let denom = lm * me * mm;
    let pi0 = delta / denom;
    let pi1 = RowVector3::new(
        le * (le + lm) * (le + mm) * delta / (denom * denom),
        le * (le + mm) * delta / (lm * lm * me * mm * mm),
        le * delta / (lm * me * mm * mm),
    );
    Ok(QbdSolution {
        r,
        pi0,
        pi1,
        phase1_mass: le / me,
        phase2_mass: le / lm,
        phase3_mass: le / mm,
    })
}

/// Generator truncated at `levels` (arrivals blocked at the top level),
/// state order `0, (1,1), (1,2), (1,3), (2,1), ...`.
pub fn truncated_generator(p: &ArchParams, levels: usize) -> Result<DMatrix<f64>> {
    p.validate()?;
    if levels == 0 {
        return Err(Error::param("levels", "need at least one level"));
    }
    let b = build_blocks(p);
    let n = 1 + 3 * levels;
    let mut q = DMatrix::zeros(n, n);
    let at = |level: usize| 1 + 3 * (level - 1);
    q[(0, 0)] = b.b00;
    for j in 0..3 {
        q[(0, 1 + j)] = b.b01[j];
        q[(1 + j, 0)] = b.b10[j];
    }
    for level in 1..=levels {
        let o = at(level);
        let mut diag = b.a1;
        if level == levels {
            diag += b.a2;
        }
        q.view_mut((o, o), (3, 3)).copy_from(&diag);
        if level < levels {
            q.view_mut((o, o + 3), (3, 3)).copy_from(&b.a2);
        }
        if level > 1 {
            q.view_mut((o, o - 3), (3, 3)).copy_from(&b.a0);
        }
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSolution {
    pub pi0: f64,
    pub levels: Vec<RowVector3<f64>>,
}

impl TruncatedSolution {
    pub fn phase_masses(&self) -> RowVector3<f64> {
        self.levels.iter().fold(RowVector3::zeros(), |acc, v| acc + v)
    }
}

/// Stationary vector of the truncated chain by a dense linear solve of
/// `pi Q = 0` with one balance equation swapped for normalization.
pub fn truncated_stationary(p: &ArchParams, levels: usize) -> Result<TruncatedSolution> {
    let q = truncated_generator(p, levels)?;
    let n = q.nrows();
    let mut a = q.transpose();
    for j in 0..n {
        a[(n - 1, j)] = 1.0;
    }
    let mut rhs = DVector::zeros(n);
    rhs[n - 1] = 1.0;
    let pi = a.lu().solve(&rhs).ok_or(Error::Singular)?;
    Ok(TruncatedSolution {
        pi0: pi[0],
        levels: (0..levels)
            .map(|l| RowVector3::new(pi[1 + 3 * l], pi[2 + 3 * l], pi[3 + 3 * l]))
            .collect(),
    })
}
