//! Performance models for networked quantum processors.
//!
//! Two architectures are compared: a single device (SD) that both generates
//! remote entanglement and runs local computation, and a double device (DD)
//! where a networking device and a computing device work in parallel except
//! while a freshly entangled qubit is transferred between them.
//!
//! The crate is organised bottom-up:
//!
//! * [`quantum`]: small dense density-matrix kernel, gates, the four storage
//!   noise channels and three independent routes to their gate fidelity.
//! * [`qbd`]: the M/HYPO3/1 quasi-birth-death chain shared by both
//!   architectures, its explicit rate matrix and boundary probabilities.
//! * [`waiting`]: waiting-time distributions (exponential mixtures with an
//!   atom at zero) for computations and for entangled qubits.
//! * [`fidelity`]: averaged gate/entanglement fidelities and the
//!   architecture comparison predicates.
//! * [`circuits`]: NV-centre state-transfer circuits with per-gate
//!   depolarizing noise.
//! * [`sim`]: a discrete-event simulator of both architectures.

pub mod circuits;
pub mod error;
pub mod fidelity;
pub mod linalg;
pub mod qbd;
pub mod quadrature;
pub mod quantum;
pub mod sim;
pub mod stats;
pub mod waiting;

pub use error::{Error, Result};
