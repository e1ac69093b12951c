//! A small multi-qubit density-matrix register with the handful of
//! operations the move circuits need.

use crate::linalg::{self, CMatrix};
use crate::quantum::{depolarize_qubit, DensityMatrix, GateMatrix, NoiseChannel};
use crate::{Error, Result};

/// Density matrix on `num_qubits` qubits. Projections leave it
/// unnormalized so branch weights can be summed linearly.
#[derive(Debug, Clone, PartialEq)]
pub struct Register {
    rho: CMatrix,
    num_qubits: usize,
}

impl Register {
    pub fn new(rho: &DensityMatrix) -> Self {
        Self {
            rho: rho.matrix().clone(),
            num_qubits: rho.num_qubits(),
        }
    }

    /// Wraps any `2^n x 2^n` operator (used to push non-state operators
    /// through linear circuit maps).
    pub fn from_operator(rho: CMatrix) -> Result<Self> {
        let num_qubits = linalg::qubits_of_dim(rho.nrows())?;
        if rho.ncols() != rho.nrows() {
            return Err(Error::DimensionMismatch {
                expected: rho.nrows(),
                found: rho.ncols(),
            });
        }
        Ok(Self { rho, num_qubits })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.rho
    }

    pub fn into_matrix(self) -> CMatrix {
        self.rho
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    /// Appends `qubit` as a new last qubit.
    pub fn push(&mut self, qubit: &DensityMatrix) -> Result<()> {
        if qubit.dim() != 2 {
            return Err(Error::UnsupportedDimension(qubit.dim()));
        }
        self.rho = linalg::kron(&self.rho, qubit.matrix());
        self.num_qubits += 1;
        Ok(())
    }

    pub fn apply(&mut self, gate: &GateMatrix, targets: &[usize]) -> Result<()> {
        if targets.len() != gate.arity() {
            return Err(Error::DimensionMismatch {
                expected: gate.arity(),
                found: targets.len(),
            });
        }
        let full = linalg::embed(gate.matrix(), targets, self.num_qubits)?;
        self.rho = &full * &self.rho * full.adjoint();
        Ok(())
    }

    pub fn depolarize(&mut self, qubit: usize, p: f64) -> Result<()> {
        self.check(qubit)?;
        self.rho = depolarize_qubit(p, &self.rho, qubit, self.num_qubits)?;
        Ok(())
    }

    /// Depolarizes every target with probability `p`, then applies the
    /// ideal gate.
    pub fn noisy_gate(&mut self, gate: &GateMatrix, p: f64, targets: &[usize]) -> Result<()> {
        for &q in targets {
            self.depolarize(q, p)?;
        }
        self.apply(gate, targets)
    }

    pub fn channel(&mut self, qubit: usize, channel: &NoiseChannel, t: f64) -> Result<()> {
        self.check(qubit)?;
        self.rho = channel.apply_to_qubit(t, &self.rho, qubit, self.num_qubits)?;
        Ok(())
    }

    /// Discards the qubit's state and replaces it with `|0>`.
    pub fn reset(&mut self, qubit: usize) -> Result<()> {
        self.check(qubit)?;
        let mut out = CMatrix::zeros(self.rho.nrows(), self.rho.ncols());
        for k in 0..2 {
            let mut op = CMatrix::zeros(2, 2);
            op[(0, k)] = linalg::ONE;
            let full = linalg::embed(&op, &[qubit], self.num_qubits)?;
            out += &full * &self.rho * full.adjoint();
        }
        self.rho = out;
        Ok(())
    }

    /// Unnormalized post-measurement register for outcome `outcome` of a
    /// computational-basis measurement.
    pub fn project(&self, qubit: usize, outcome: u8) -> Result<Self> {
        self.check(qubit)?;
        if outcome > 1 {
            return Err(Error::param("outcome", format!("measurement outcome must be 0 or 1, got {outcome}")));
        }
        let proj = if outcome == 0 {
            linalg::real_diag(&[1.0, 0.0])
        } else {
            linalg::real_diag(&[0.0, 1.0])
        };
        let full = linalg::embed(&proj, &[qubit], self.num_qubits)?;
        Ok(Self {
            rho: &full * &self.rho * &full,
            num_qubits: self.num_qubits,
        })
    }

    /// Born probability of `outcome` relative to the current trace.
    pub fn probability(&self, qubit: usize, outcome: u8) -> Result<f64> {
        let total = self.trace();
        let part = self.project(qubit, outcome)?.trace();
        Ok(if total > 0.0 { (part / total).clamp(0.0, 1.0) } else { 0.0 })
    }

    pub fn normalize(&mut self) -> Result<()> {
        let tr = self.trace();
        if !(tr > 0.0) {
            return Err(Error::TraceNotOne(tr));
        }
        self.rho.unscale_mut(tr);
        Ok(())
    }

    pub fn add(&mut self, other: &Self) -> Result<()> {
        if other.num_qubits != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: other.num_qubits,
            });
        }
        self.rho += &other.rho;
        Ok(())
    }

    pub fn reduce(&self, keep: &[usize]) -> Result<CMatrix> {
        linalg::partial_trace(&self.rho, self.num_qubits, keep)
    }

    pub fn to_state(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.rho.clone())
    }

    fn check(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                index: qubit,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }
}

/// Single noisy gate on a validated state.
pub fn noisy_gate(gate: &GateMatrix, p: f64, rho: &DensityMatrix, targets: &[usize]) -> Result<DensityMatrix> {
    let mut reg = Register::new(rho);
    reg.noisy_gate(gate, p, targets)?;
    reg.to_state()
}
