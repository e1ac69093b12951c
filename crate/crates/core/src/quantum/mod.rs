//! Single- and two-qubit quantum kernel.
//!
//! Everything here is a pure function on small dense matrices. The four
//! storage noise channels are time-parameterized by the memory lifetimes in
//! [`MemoryParams`]; their average gate fidelity is available three ways
//! (closed form, Pauli trace sum, Choi state) so each route can check the
//! others.

pub mod channel;
pub mod choi;
pub mod fidelity;
pub mod gates;
pub mod haar;
pub mod state;

pub use channel::{depolarize, depolarize_qubit, ChannelKind, MemoryParams, NoiseChannel};
pub use choi::{
    choi_from_map, choi_state, gate_fidelity_choi_oracle, gate_fidelity_from_choi,
    partial_transpose, symmetric_projector,
};
pub use fidelity::{
    ent_fidelity_from_gate, gate_fidelity_bowdrey, gate_fidelity_closed, gate_fidelity_from_ent,
};
pub use gates::{pauli, rotation, GateMatrix, Pauli, Rotation};
pub use state::{state_fidelity, DensityMatrix, PureState};
