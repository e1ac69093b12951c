//! Dense complex matrices on a handful of qubits.
//!
//! Registers never exceed four qubits, so every operator is materialised as a
//! full `2^n x 2^n` matrix. Qubit 0 is the most significant tensor factor.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn from_rows(rows: &[&[Complex64]]) -> CMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    DMatrix::from_fn(n, m, |i, j| rows[i][j])
}

pub fn real_diag(values: &[f64]) -> CMatrix {
    let n = values.len();
    DMatrix::from_fn(n, n, |i, j| if i == j { c(values[i], 0.0) } else { ZERO })
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    max_abs_diff(&(m.adjoint() * m), &identity(n))
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let h = (m + m.adjoint()).scale(0.5);
    let mut values: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Number of qubits of a `2^n`-dimensional operator.
pub fn qubits_of_dim(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::UnsupportedDimension(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

#[inline]
fn bit(index: usize, qubit: usize, num_qubits: usize) -> usize {
    (index >> (num_qubits - 1 - qubit)) & 1
}

/// Lift a `k`-qubit operator acting on `targets` (in the operator's own
/// factor order) to the full `num_qubits` register.
pub fn embed(op: &CMatrix, targets: &[usize], num_qubits: usize) -> Result<CMatrix> {
    let k = targets.len();
    if op.nrows() != 1 << k || op.ncols() != 1 << k {
        return Err(Error::DimensionMismatch {
            expected: 1 << k,
            found: op.nrows(),
        });
    }
    for (pos, &t) in targets.iter().enumerate() {
        if t >= num_qubits {
            return Err(Error::QubitOutOfRange {
                index: t,
                num_qubits,
            });
        }
        if targets[..pos].contains(&t) {
            return Err(Error::param("targets", "repeated qubit index"));
        }
    }
    let dim = 1 << num_qubits;
    let rest_mask = (0..num_qubits)
        .filter(|q| !targets.contains(q))
        .fold(0usize, |acc, q| acc | 1 << (num_qubits - 1 - q));
    let sub = |index: usize| {
        targets
            .iter()
            .fold(0usize, |acc, &t| (acc << 1) | bit(index, t, num_qubits))
    };
    Ok(DMatrix::from_fn(dim, dim, |i, j| {
        if i & rest_mask == j & rest_mask {
            op[(sub(i), sub(j))]
        } else {
            ZERO
        }
    }))
}

/// Reduced operator on the qubits in `keep` (result factor order follows
/// `keep`), tracing out everything else.
pub fn partial_trace(m: &CMatrix, num_qubits: usize, keep: &[usize]) -> Result<CMatrix> {
    let dim = 1 << num_qubits;
    if m.nrows() != dim || m.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: m.nrows(),
        });
    }
    if let Some(&bad) = keep.iter().find(|&&q| q >= num_qubits) {
        return Err(Error::QubitOutOfRange {
            index: bad,
            num_qubits,
        });
    }
    let traced: Vec<usize> = (0..num_qubits).filter(|q| !keep.contains(q)).collect();
    let out_dim = 1 << keep.len();
    let compose = |kept: usize, env: usize| {
        let mut index = 0usize;
        for (pos, &q) in keep.iter().enumerate() {
            let b = (kept >> (keep.len() - 1 - pos)) & 1;
            index |= b << (num_qubits - 1 - q);
        }
        for (pos, &q) in traced.iter().enumerate() {
            let b = (env >> (traced.len() - 1 - pos)) & 1;
            index |= b << (num_qubits - 1 - q);
        }
        index
    };
    let env_dim = 1 << traced.len();
    Ok(DMatrix::from_fn(out_dim, out_dim, |a, b| {
        (0..env_dim)
            .map(|e| m[(compose(a, e), compose(b, e))])
            .sum()
    }))
}
