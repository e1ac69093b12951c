use nalgebra::DVector;
use num_complex::Complex64;

use crate::linalg::{self, CMatrix, ONE, ZERO};
use crate::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
pub const NORM_TOL: f64 = 1e-12;

/// Normalized ket.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        linalg::qubits_of_dim(amplitudes.len())?;
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self {
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        Self::new(amplitudes.into_iter().map(|a| a / norm).collect())
    }

    /// Computational basis state `|index>` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::param("index", format!("{index} >= dimension {dim}")));
        }
        Self::new((0..dim).map(|k| if k == index { ONE } else { ZERO }).collect())
    }

    /// `(|00> + |11>)/sqrt(2)`.
    pub fn phi_plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amplitudes: DVector::from_vec(vec![
                Complex64::new(h, 0.0),
                ZERO,
                ZERO,
                Complex64::new(h, 0.0),
            ]),
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn projector(&self) -> CMatrix {
        &self.amplitudes * self.amplitudes.adjoint()
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: self.projector(),
        }
    }

    /// Applies a unitary (given as a plain matrix) to the ket.
    pub fn evolve(&self, unitary: &CMatrix) -> Result<Self> {
        if unitary.nrows() != self.dim() || unitary.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: unitary.nrows(),
            });
        }
        Ok(Self {
            amplitudes: unitary * &self.amplitudes,
        })
    }
}

/// Hermitian, positive semi-definite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        validate(&matrix)?;
        Ok(Self { matrix })
    }

    /// Wraps a matrix known to be a valid state by construction (e.g. the
    /// output of a trace-preserving map on a valid input).
    pub(crate) fn from_trusted(matrix: CMatrix) -> Self {
        debug_assert!(validate(&matrix).is_ok(), "{:?}", validate(&matrix));
        Self { matrix }
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        linalg::qubits_of_dim(dim)?;
        Ok(Self {
            matrix: linalg::identity(dim).unscale(dim as f64),
        })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn num_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    /// Reduced state on the qubits in `keep`, in that order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let reduced = linalg::partial_trace(&self.matrix, self.num_qubits(), keep)?;
        Ok(Self::from_trusted(reduced))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            matrix: linalg::kron(&self.matrix, &other.matrix),
        }
    }
}

/// Checks the three density-matrix invariants on a raw matrix.
pub fn validate(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    linalg::qubits_of_dim(m.nrows())?;
    let defect = linalg::hermiticity_defect(m);
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(Error::TraceNotOne(tr.re));
    }
    let smallest = linalg::hermitian_eigenvalues(m)[0];
    if smallest < -PSD_TOL {
        return Err(Error::NotPositive(smallest));
    }
    Ok(())
}

/// `<psi| rho |psi>`.
pub fn state_fidelity(rho: &DensityMatrix, target: &PureState) -> Result<f64> {
    if rho.dim() != target.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: target.dim(),
        });
    }
    let psi = target.amplitudes();
    let overlap = (psi.adjoint() * rho.matrix() * psi)[(0, 0)];
    debug_assert!(overlap.im.abs() < 1e-12, "imaginary overlap {}", overlap.im);
    Ok(overlap.re.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, real_diag};

    #[test]
    fn pure_state_rejects_unnormalized() {
        assert!(matches!(
            PureState::new(vec![ONE, ONE]),
            Err(Error::NotNormalized(_))
        ));
        assert!(PureState::new(vec![ONE, ZERO, ZERO]).is_err());
        assert!(PureState::normalized(vec![ONE, ONE]).is_ok());
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(real_diag(&[0.5, 0.5])).is_ok());
        assert!(matches!(
            DensityMatrix::new(real_diag(&[0.6, 0.5])),
            Err(Error::TraceNotOne(_))
        ));
        assert!(matches!(
            DensityMatrix::new(real_diag(&[1.2, -0.2])),
            Err(Error::NotPositive(_))
        ));
        let skew = crate::linalg::from_rows(&[&[c(0.5, 0.0), c(0.1, 0.0)], &[c(0.2, 0.0), c(0.5, 0.0)]]);
        assert!(matches!(DensityMatrix::new(skew), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn fidelity_examples() {
        let psi = PureState::normalized(vec![c(1.0, 0.0), c(0.3, -0.7)]).unwrap();
        assert!((state_fidelity(&psi.density(), &psi).unwrap() - 1.0).abs() < 1e-12);

        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!((state_fidelity(&mixed, &psi).unwrap() - 0.5).abs() < 1e-12);

        let zero = PureState::basis(2, 0).unwrap();
        assert!((state_fidelity(&mixed, &zero).unwrap() - 0.5).abs() < 1e-15);

        let bell = PureState::phi_plus();
        assert!(state_fidelity(&mixed, &bell).is_err());
    }

    #[test]
    fn bell_reduced_state_is_mixed() {
        let reduced = PureState::phi_plus().density().partial_trace(&[1]).unwrap();
        let expected = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(crate::linalg::max_abs_diff(reduced.matrix(), expected.matrix()) < 1e-15);
    }
}
