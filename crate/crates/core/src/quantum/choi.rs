use super::channel::NoiseChannel;
use super::gates::Pauli;
use super::state::{DensityMatrix, PureState};
use crate::linalg::{self, CMatrix};
use crate::{Error, Result};

/// Choi state `(N (x) I)(|Phi><Phi|)` of a linear single-qubit map, built
/// from its action on the matrix units `|i><j|`.
pub fn choi_from_map<F>(map: F) -> Result<CMatrix>
where
    F: Fn(&CMatrix) -> Result<CMatrix>,
{
    let mut tau = CMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            let mut unit = CMatrix::zeros(2, 2);
            unit[(i, j)] = linalg::ONE;
            let image = map(&unit)?;
            if image.shape() != (2, 2) {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    found: image.nrows(),
                });
            }
            tau += linalg::kron(&image, &unit).scale(0.5);
        }
    }
    Ok(tau)
}

pub fn choi_state(channel: &NoiseChannel, t: f64) -> Result<DensityMatrix> {
    let tau = choi_from_map(|m| channel.apply_matrix(t, m))?;
    Ok(DensityMatrix::from_trusted(tau))
}

/// Transposes the second tensor factor of a two-qubit operator.
pub fn partial_transpose(m: &CMatrix) -> Result<CMatrix> {
    if m.shape() != (4, 4) {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: m.nrows(),
        });
    }
    Ok(CMatrix::from_fn(4, 4, |r, s| {
        let (a, b) = (r >> 1, r & 1);
        let (c, d) = (s >> 1, s & 1);
        m[((a << 1) | d, (c << 1) | b)]
    }))
}

/// Projector onto the symmetric subspace of two qubits, as the sum of the
/// three symmetric Bell projectors `(I (x) X^a Z^b)|Phi>` for
/// `(a, b) in {(0,0), (0,1), (1,0)}`.
pub fn symmetric_projector() -> CMatrix {
    let phi = PureState::phi_plus();
    let x = Pauli::X.matrix();
    let z = Pauli::Z.matrix();
    let id = linalg::identity(2);
    [id.clone(), z, x]
        .iter()
        .map(|local| {
            let op = linalg::kron(&id, local);
            phi.evolve(&op).expect("4x4 operator").projector()
        })
        .fold(CMatrix::zeros(4, 4), |acc, p| acc + p)
}

/// `(d_A / d_sym) Tr[Pi_sym tau^Gamma]` with `d_A = 2`, `d_sym = 3`.
pub fn gate_fidelity_from_choi(tau: &CMatrix) -> Result<f64> {
    let gamma = partial_transpose(tau)?;
    Ok(2.0 / 3.0 * (symmetric_projector() * gamma).trace().re)
}

pub fn gate_fidelity_choi_oracle(channel: &NoiseChannel, t: f64) -> Result<f64> {
    let tau = choi_state(channel, t)?;
    gate_fidelity_from_choi(tau.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs_diff};
    use crate::quantum::channel::{ChannelKind, MemoryParams};
    use crate::quantum::fidelity::gate_fidelity_closed;
    use crate::quantum::state::validate;

    fn swap() -> CMatrix {
        let mut s = CMatrix::zeros(4, 4);
        for (r, col) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            s[(r, col)] = linalg::ONE;
        }
        s
    }

    fn mem() -> MemoryParams {
        MemoryParams::new(1.0, 1.4, 0.6).unwrap()
    }

    #[test]
    fn projector_properties() {
        let p = symmetric_projector();
        assert!((p.trace().re - 3.0).abs() < 1e-14);
        assert!(max_abs_diff(&(&p * &p), &p) < 1e-12);
        let alt = (linalg::identity(4) + swap()).scale(0.5);
        assert!(max_abs_diff(&p, &alt) < 1e-14);
    }

    #[test]
    fn partial_transpose_examples() {
        let a = crate::linalg::from_rows(&[&[c(1.0, 0.0), c(2.0, 1.0)], &[c(0.0, -3.0), c(4.0, 0.0)]]);
        let b = crate::linalg::from_rows(&[&[c(0.5, 0.0), c(0.0, 1.0)], &[c(7.0, 0.0), c(-1.0, 2.0)]]);
        let ab = linalg::kron(&a, &b);
        let expected = linalg::kron(&a, &b.transpose());
        assert!(max_abs_diff(&partial_transpose(&ab).unwrap(), &expected) < 1e-15);
        let twice = partial_transpose(&partial_transpose(&ab).unwrap()).unwrap();
        assert!(max_abs_diff(&twice, &ab) < 1e-15);

        let phi = PureState::phi_plus().projector();
        assert!(max_abs_diff(&partial_transpose(&phi).unwrap(), &swap().scale(0.5)) < 1e-15);
        assert!(partial_transpose(&linalg::identity(2)).is_err());
    }

    #[test]
    fn choi_examples() {
        for kind in ChannelKind::ALL {
            let ch = NoiseChannel::new(kind, mem()).unwrap();
            let tau = choi_state(&ch, 0.0).unwrap();
            assert!(max_abs_diff(tau.matrix(), &PureState::phi_plus().projector()) < 1e-15);
            assert!((gate_fidelity_choi_oracle(&ch, 0.0).unwrap() - 1.0).abs() < 1e-14);
            validate(choi_state(&ch, 0.8).unwrap().matrix()).unwrap();
        }

        let depol = NoiseChannel::new(ChannelKind::Depolarizing, mem()).unwrap();
        let white = choi_state(&depol, 1e4).unwrap();
        assert!(max_abs_diff(white.matrix(), &linalg::identity(4).scale(0.25)) < 1e-12);
        let f = gate_fidelity_choi_oracle(&depol, 1.0).unwrap();
        assert!((f - 0.5 * (1.0 + (-1.0f64).exp())).abs() < 1e-10);

        // p = 1/2 needs t -> infinity for the dephasing channel.
        let deph = NoiseChannel::new(ChannelKind::Dephasing, mem()).unwrap();
        let tau = choi_state(&deph, 1e4).unwrap();
        let phi = PureState::phi_plus().projector();
        let zi = linalg::kron(&Pauli::Z.matrix(), &linalg::identity(2));
        let expected = (&phi + &zi * &phi * &zi).scale(0.5);
        assert!(max_abs_diff(tau.matrix(), &expected) < 1e-12);
    }

    #[test]
    fn oracle_matches_closed_form() {
        for kind in ChannelKind::ALL {
            let ch = NoiseChannel::new(kind, mem()).unwrap();
            for t in [0.05, 0.5, 2.0, 9.0] {
                let a = gate_fidelity_choi_oracle(&ch, t).unwrap();
                let b = gate_fidelity_closed(&ch, t).unwrap();
                assert!((a - b).abs() < 1e-12, "{kind:?} t={t}: {a} vs {b}");
            }
        }
    }
}
