use serde::{Deserialize, Serialize};

use crate::linalg::{self, c, CMatrix, I, ONE, ZERO};
use crate::{Error, Result};

pub const UNITARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> CMatrix {
        match self {
            Pauli::X => linalg::from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]),
            Pauli::Y => linalg::from_rows(&[&[ZERO, -I], &[I, ZERO]]),
            Pauli::Z => linalg::real_diag(&[1.0, -1.0]),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rotation {
    RX,
    RY,
    RZ,
    /// Electron-controlled X rotation: `|0><0| (x) RX(t) + |1><1| (x) RX(-t)`.
    RCX,
    /// Electron-controlled Y rotation: `|0><0| (x) RY(t) + |1><1| (x) RY(-t)`.
    RCY,
}

impl Rotation {
    pub fn arity(self) -> usize {
        match self {
            Rotation::RX | Rotation::RY | Rotation::RZ => 1,
            Rotation::RCX | Rotation::RCY => 2,
        }
    }
}

/// A validated 1- or 2-qubit unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct GateMatrix {
    matrix: CMatrix,
    arity: usize,
}

impl GateMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let arity = match matrix.nrows() {
            2 => 1,
            4 => 2,
            d => return Err(Error::UnsupportedDimension(d)),
        };
        let defect = linalg::unitarity_defect(&matrix);
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary(defect));
        }
        Ok(Self { matrix, arity })
    }

    pub fn identity(arity: usize) -> Result<Self> {
        Self::new(linalg::identity(1 << arity))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dagger(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            arity: self.arity,
        }
    }

    /// `self * other`, i.e. `other` acts first.
    pub fn then_after(&self, other: &Self) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.nrows(),
                found: other.matrix.nrows(),
            });
        }
        Ok(Self {
            matrix: &self.matrix * &other.matrix,
            arity: self.arity,
        })
    }
}

pub fn pauli(kind: Pauli) -> GateMatrix {
    GateMatrix {
        matrix: kind.matrix(),
        arity: 1,
    }
}

fn single(kind: Rotation, theta: f64) -> CMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    match kind {
        Rotation::RX => linalg::from_rows(&[&[c(co, 0.0), c(0.0, -s)], &[c(0.0, -s), c(co, 0.0)]]),
        Rotation::RY => linalg::from_rows(&[&[c(co, 0.0), c(-s, 0.0)], &[c(s, 0.0), c(co, 0.0)]]),
        Rotation::RZ => linalg::from_rows(&[&[c(co, -s), ZERO], &[ZERO, c(co, s)]]),
        Rotation::RCX | Rotation::RCY => unreachable!("controlled rotation"),
    }
}

/// Rotation by `theta` radians. Panics on a non-finite angle.
pub fn rotation(kind: Rotation, theta: f64) -> GateMatrix {
    assert!(theta.is_finite(), "rotation angle must be finite, got {theta}");
    let matrix = match kind {
        Rotation::RX | Rotation::RY | Rotation::RZ => single(kind, theta),
        Rotation::RCX | Rotation::RCY => {
            let base = if kind == Rotation::RCX {
                Rotation::RX
            } else {
                Rotation::RY
            };
            let p0 = linalg::real_diag(&[1.0, 0.0]);
            let p1 = linalg::real_diag(&[0.0, 1.0]);
            linalg::kron(&p0, &single(base, theta)) + linalg::kron(&p1, &single(base, -theta))
        }
    };
    GateMatrix {
        matrix,
        arity: kind.arity(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn pauli_algebra() {
        let x = pauli(Pauli::X);
        assert_eq!(x.matrix()[(0, 1)], ONE);
        assert_eq!(x.matrix()[(0, 0)], ZERO);
        for p in Pauli::ALL {
            let m = p.matrix();
            assert!(max_abs_diff(&(&m * &m), &linalg::identity(2)) < 1e-15);
        }
        let xy = Pauli::X.matrix() * Pauli::Y.matrix();
        assert!(max_abs_diff(&xy, &(Pauli::Z.matrix() * I)) < 1e-15);
    }

    #[test]
    fn rotation_examples() {
        assert!(max_abs_diff(rotation(Rotation::RZ, 0.0).matrix(), &linalg::identity(2)) < 1e-15);
        let rx_pi = rotation(Rotation::RX, PI);
        assert!(max_abs_diff(rx_pi.matrix(), &(Pauli::X.matrix() * -I)) < 1e-15);

        let fwd = rotation(Rotation::RCX, FRAC_PI_2);
        let back = rotation(Rotation::RCX, -FRAC_PI_2);
        let prod = fwd.then_after(&back).unwrap();
        assert!(max_abs_diff(prod.matrix(), &linalg::identity(4)) < 1e-15);
    }

    #[test]
    fn all_rotations_are_unitary() {
        for kind in [Rotation::RX, Rotation::RY, Rotation::RZ, Rotation::RCX, Rotation::RCY] {
            for k in -8..=8 {
                let g = rotation(kind, k as f64 * 0.7);
                assert!(GateMatrix::new(g.matrix().clone()).is_ok());
                assert_eq!(g.arity(), kind.arity());
            }
        }
    }

    #[test]
    fn controlled_rotation_blocks() {
        let g = rotation(Rotation::RCY, 0.9);
        let m = g.matrix();
        let ry = rotation(Rotation::RY, 0.9);
        let ry_neg = rotation(Rotation::RY, -0.9);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(m[(i, j)], ry.matrix()[(i, j)]);
                assert_eq!(m[(i + 2, j + 2)], ry_neg.matrix()[(i, j)]);
                assert_eq!(m[(i, j + 2)], ZERO);
            }
        }
    }

    #[test]
    fn gate_matrix_rejects_non_unitary() {
        assert!(matches!(
            GateMatrix::new(linalg::real_diag(&[1.0, 0.5])),
            Err(Error::NotUnitary(_))
        ));
        assert!(matches!(
            GateMatrix::new(linalg::identity(8)),
            Err(Error::UnsupportedDimension(8))
        ));
    }
}
