//! Haar-random states and unitaries for Monte Carlo checks.

use rand::Rng;
use rand_distr::StandardNormal;

use super::channel::NoiseChannel;
use super::gates::GateMatrix;
use super::state::PureState;
use crate::linalg::{c, CMatrix};
use crate::stats::MeanEstimate;
use crate::Result;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> num_complex::Complex64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniformly distributed pure state: normalized complex Gaussian vector.
pub fn random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PureState {
    loop {
        let amps: Vec<_> = (0..dim).map(|_| gaussian(rng)).collect();
        if let Ok(s) = PureState::normalized(amps) {
            return s;
        }
    }
}

/// Haar-distributed unitary from the QR decomposition of a Ginibre matrix,
/// with the phases of `R`'s diagonal folded back into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> GateMatrix {
    let z = CMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    let qr = z.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    GateMatrix::new(q).expect("QR factor is unitary")
}

/// Monte Carlo estimate of `E_psi <psi| G^dag N_t(G psi G^dag) G |psi>` over
/// Haar-random single-qubit inputs.
pub fn monte_carlo_gate_fidelity<R: Rng + ?Sized>(
    channel: &NoiseChannel,
    t: f64,
    gate: &GateMatrix,
    samples: usize,
    rng: &mut R,
) -> Result<MeanEstimate> {
    let g = gate.matrix();
    let g_dag = g.adjoint();
    let values = (0..samples)
        .map(|_| {
            let psi = random_state(2, rng);
            let rotated = g * psi.projector() * &g_dag;
            let noisy = channel.apply_matrix(t, &rotated)?;
            let back = &g_dag * noisy * g;
            let v = psi.amplitudes();
            Ok((v.adjoint() * back * v)[(0, 0)].re)
        })
        .collect::<Result<Vec<f64>>>()?;
    MeanEstimate::from_samples(&values)
}
