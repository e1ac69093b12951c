//! NV-centre state-transfer circuits with per-gate depolarizing noise.
//!
//! Every gate is modelled as single-qubit depolarizing noise on each qubit
//! it touches followed by the ideal unitary; gates take no time. Storage
//! decoherence is applied separately, as the composite channel acting on the
//! qubit that holds the state while it waits for its move.

mod moves;
mod postmove;
mod register;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use moves::{
    dd_branch_probabilities, dd_move_circuit, dd_move_map, sd_move_circuit, sd_move_map, CircuitOutcome,
    DdMode, MoveInput, MoveOptions,
};
pub use postmove::{
    avg_post_move_ent_fidelity, avg_post_move_fidelity, circuit_transfer_ptm, paper_avg_post_move_ent_fidelity,
    post_move_ent_fidelity_closed, post_move_gate_fidelity_circuit, post_move_gate_fidelity_closed,
    printed_coefficients, PostMoveModel, PAPER_ENT_COEFFICIENTS,
};
pub use register::{noisy_gate, Register};

/// Depolarizing probabilities per gate type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GateNoiseTable {
    pub p_electron_init: f64,
    pub p_carbon_init: f64,
    pub p_rz_carbon: f64,
    pub p_rx_electron: f64,
    pub p_rcx: f64,
    pub p_rcy: f64,
}

impl Default for GateNoiseTable {
    fn default() -> Self {
        Self {
            p_electron_init: 0.02,
            p_carbon_init: 0.006 / 4.0,
            p_rz_carbon: 0.001 / 3.0,
            p_rx_electron: 0.0,
            p_rcx: 0.005,
            p_rcy: 0.005,
        }
    }
}

impl GateNoiseTable {
    pub fn noiseless() -> Self {
        Self {
            p_electron_init: 0.0,
            p_carbon_init: 0.0,
            p_rz_carbon: 0.0,
            p_rx_electron: 0.0,
            p_rcx: 0.0,
            p_rcy: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("p_electron_init", self.p_electron_init),
            ("p_carbon_init", self.p_carbon_init),
            ("p_rz_carbon", self.p_rz_carbon),
            ("p_rx_electron", self.p_rx_electron),
            ("p_rcx", self.p_rcx),
            ("p_rcy", self.p_rcy),
        ] {
            if !(0.0..=0.25).contains(&p) {
                return Err(Error::param(name, format!("depolarizing probability {p} outside [0, 1/4]")));
            }
        }
        Ok(())
    }
}
