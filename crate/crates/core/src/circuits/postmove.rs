//! Fidelity of a stored entangled qubit after it has been moved.
//!
//! Three models are kept side by side: the symbolic expression for the SD
//! move, the numeric coefficients quoted for it at the default noise table,
//! and a closed form extracted from the simulated circuit itself. For any
//! single-qubit channel `F = 1/2 + Tr(T)/6` with `T` the linear part of its
//! Pauli transfer matrix; storage under the composite channel contributes
//! `diag(e^{-t/T2}, e^{-t/T2}, e^{-t/T1})`, so the circuit version is
//! `1/2 + (M_xx + M_yy) e^{-t/T2}/6 + M_zz e^{-t/T1}/6` where `M` is the
//! transfer matrix of the noisy move itself.

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use super::moves::{dd_move_map, sd_move_map, MoveInput, MoveOptions};
use super::GateNoiseTable;
use crate::linalg::CMatrix;
use crate::qbd::Architecture;
use crate::quantum::{ent_fidelity_from_gate, ChannelKind, MemoryParams, NoiseChannel, Pauli};
use crate::{Error, Result};

/// `(constant, T1 coefficient, T2 coefficient)` of the quoted average
/// post-move entanglement fidelity at the default noise table.
pub const PAPER_ENT_COEFFICIENTS: (f64, f64, f64) = (0.25, 0.238023, 0.4682475);

fn check_time(t: f64) -> Result<()> {
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    Ok(())
}

fn check_rate(lambda_m: f64) -> Result<()> {
    if !(lambda_m > 0.0) {
        return Err(Error::param("lambda_m", format!("rate must be positive, got {lambda_m}")));
    }
    Ok(())
}

/// `x T / (x T + 1)`, the `Exp(x)` average of `e^{-t/T}`.
fn exp_avg(lambda_m: f64, t: f64) -> f64 {
    lambda_m * t / (lambda_m * t + 1.0)
}

/// Gate-level `(constant, T1 coefficient, T2 coefficient)` of the symbolic
/// post-move expression.
pub fn printed_coefficients(noise: &GateNoiseTable) -> (f64, f64, f64) {
    let p_init = noise.p_carbon_init;
    let p_rz = noise.p_rz_carbon;
    let p_rx = noise.p_rx_electron;
    let p_rcx = noise.p_rcx;
    let c1 = (p_init - 1.0) * (p_rz - 1.0).powi(2) * (p_rcx - 1.0).powi(2) * (2.0 * p_rx - 1.0) / 6.0;
    let c2 = (2.0 + p_init * (p_rz - 1.0) - p_rz) * (p_rz - 1.0) * (p_rcx - 1.0).powi(3) * (4.0 * p_rx - 1.0) / 6.0;
    (0.5 - p_rx, c1, c2)
}

/// Symbolic post-move gate fidelity after storing for `t` seconds. With
/// every probability zero it gives 1/3 at `t = 0`; [`PostMoveModel`] is the
/// circuit-consistent alternative.
pub fn post_move_gate_fidelity_closed(noise: &GateNoiseTable, t: f64, m: &MemoryParams) -> Result<f64> {
    check_time(t)?;
    noise.validate()?;
    m.validate_composite()?;
    let (c0, c1, c2) = printed_coefficients(noise);
    Ok(c0 + c1 * (-t / m.t1).exp() + c2 * (-t / m.t2).exp())
}

pub fn post_move_ent_fidelity_closed(noise: &GateNoiseTable, t: f64, m: &MemoryParams) -> Result<f64> {
    ent_fidelity_from_gate(post_move_gate_fidelity_closed(noise, t, m)?, 2)
}

/// Symbolic post-move gate fidelity averaged over `Exp(lambda_m)` storage.
pub fn avg_post_move_fidelity(noise: &GateNoiseTable, lambda_m: f64, m: &MemoryParams) -> Result<f64> {
    check_rate(lambda_m)?;
    noise.validate()?;
    m.validate_composite()?;
    let (c0, c1, c2) = printed_coefficients(noise);
    Ok(c0 + c1 * exp_avg(lambda_m, m.t1) + c2 * exp_avg(lambda_m, m.t2))
}

pub fn avg_post_move_ent_fidelity(noise: &GateNoiseTable, lambda_m: f64, m: &MemoryParams) -> Result<f64> {
    ent_fidelity_from_gate(avg_post_move_fidelity(noise, lambda_m, m)?, 2)
}

/// The quoted numeric average post-move entanglement fidelity.
pub fn paper_avg_post_move_ent_fidelity(lambda_m: f64, m: &MemoryParams) -> Result<f64> {
    check_rate(lambda_m)?;
    m.validate_composite()?;
    let (c0, c1, c2) = PAPER_ENT_COEFFICIENTS;
    Ok(c0 + c1 * exp_avg(lambda_m, m.t1) + c2 * exp_avg(lambda_m, m.t2))
}

fn pauli_transfer<F: Fn(&CMatrix) -> Result<CMatrix>>(map: F) -> Result<Matrix3<f64>> {
    let paulis = Pauli::ALL.map(Pauli::matrix);
    let mut out = Matrix3::zeros();
    for (j, sj) in paulis.iter().enumerate() {
        let image = map(sj)?;
        for (i, si) in paulis.iter().enumerate() {
            out[(i, j)] = 0.5 * (si * &image).trace().re;
        }
    }
    Ok(out)
}

/// Linear part `M_ij = Tr[sigma_i N(sigma_j)] / 2` of the Pauli transfer
/// matrix of the noisy move (no storage), branch-averaged for DD.
pub fn circuit_transfer_ptm(noise: &GateNoiseTable, arch: Architecture, electron_reinit: bool) -> Result<Matrix3<f64>> {
    let opts = MoveOptions {
        storage: None,
        electron_reinit,
    };
    match arch {
        Architecture::SD => pauli_transfer(sd_move_map(noise, &opts)?),
        Architecture::DD => pauli_transfer(dd_move_map(noise, &opts, None)?),
    }
}

/// Post-move gate fidelity by direct density-matrix simulation of storage
/// followed by the move.
pub fn post_move_gate_fidelity_circuit(
    noise: &GateNoiseTable,
    arch: Architecture,
    t: f64,
    m: &MemoryParams,
    electron_reinit: bool,
) -> Result<f64> {
    check_time(t)?;
    let opts = MoveOptions {
        storage: Some((NoiseChannel::new(ChannelKind::Composite, *m)?, t)),
        electron_reinit,
    };
    let outcome = match arch {
        Architecture::SD => super::sd_move_circuit(noise, &MoveInput::EntangledHalf, &opts)?,
        Architecture::DD => super::dd_move_circuit(
            noise,
            &MoveInput::EntangledHalf,
            &opts,
            super::DdMode::BranchAveraged,
        )?,
    };
    Ok(outcome.post_move_gate_fidelity)
}

/// Closed-form post-move fidelity extracted from the simulated circuit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PostMoveModel {
    pub arch: Architecture,
    pub electron_reinit: bool,
    /// Diagonal `(M_xx, M_yy, M_zz)` of the move's transfer matrix.
    pub ptm_diagonal: [f64; 3],
}

impl PostMoveModel {
    pub fn from_circuit(noise: &GateNoiseTable, arch: Architecture, electron_reinit: bool) -> Result<Self> {
        let m = circuit_transfer_ptm(noise, arch, electron_reinit)?;
        Ok(Self {
            arch,
            electron_reinit,
            ptm_diagonal: [m[(0, 0)], m[(1, 1)], m[(2, 2)]],
        })
    }

    /// Gate-level `(constant, T1 coefficient, T2 coefficient)`.
    pub fn coefficients(&self) -> (f64, f64, f64) {
        let [xx, yy, zz] = self.ptm_diagonal;
        (0.5, zz / 6.0, (xx + yy) / 6.0)
    }

    /// Entanglement-level coefficients, comparable with
    /// [`PAPER_ENT_COEFFICIENTS`].
    pub fn ent_coefficients(&self) -> (f64, f64, f64) {
        let (c0, c1, c2) = self.coefficients();
        ((3.0 * c0 - 1.0) / 2.0, 1.5 * c1, 1.5 * c2)
    }

    pub fn gate_fidelity(&self, t: f64, m: &MemoryParams) -> Result<f64> {
        check_time(t)?;
        m.validate_composite()?;
        let (c0, c1, c2) = self.coefficients();
        Ok(c0 + c1 * (-t / m.t1).exp() + c2 * (-t / m.t2).exp())
    }

    pub fn avg_gate_fidelity(&self, lambda_m: f64, m: &MemoryParams) -> Result<f64> {
        check_rate(lambda_m)?;
        m.validate_composite()?;
        let (c0, c1, c2) = self.coefficients();
        Ok(c0 + c1 * exp_avg(lambda_m, m.t1) + c2 * exp_avg(lambda_m, m.t2))
    }

    pub fn avg_ent_fidelity(&self, lambda_m: f64, m: &MemoryParams) -> Result<f64> {
        ent_fidelity_from_gate(self.avg_gate_fidelity(lambda_m, m)?, 2)
    }

    /// `lambda_m -> infinity` limit of the average entanglement fidelity.
    pub fn ent_asymptote(&self) -> f64 {
        let (c0, c1, c2) = self.ent_coefficients();
        c0 + c1 + c2
    }
}
