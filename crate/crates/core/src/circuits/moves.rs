//! The SD move (electron to carbon) and the DD move (networking electron to
//! computing electron by teleportation).

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::register::Register;
use super::GateNoiseTable;
use crate::linalg::{self, CMatrix};
use crate::quantum::{
    choi_from_map, gate_fidelity_from_choi, rotation, DensityMatrix, GateMatrix, NoiseChannel, PureState, Rotation,
};
use crate::{Error, Result};

/// Storage decoherence before the move and the optional electron
/// re-initialization step.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MoveOptions {
    /// Channel and elapsed time applied to the input qubit before the move.
    pub storage: Option<(NoiseChannel, f64)>,
    /// Re-initialize the electron (with `p_electron_init` noise) whenever
    /// the circuit resets it.
    pub electron_reinit: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MoveInput {
    Qubit(DensityMatrix),
    /// One half of `|Phi+>`; the other half is kept as a noiseless
    /// reference.
    EntangledHalf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DdMode {
    /// Draw both measurement outcomes from their Born probabilities.
    Sampled { seed: u64 },
    /// Sum the four unnormalized measurement branches.
    BranchAveraged,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitOutcome {
    /// The moved qubit, or (moved qubit, reference) for an entangled input.
    pub post_state: DensityMatrix,
    pub post_move_gate_fidelity: f64,
    pub post_move_ent_fidelity: f64,
    /// Measurement outcomes `(m1, m2)` of a sampled DD run.
    pub branch: Option<(u8, u8)>,
}

fn sd_ops(reg: &mut Register, electron: usize, carbon: usize, noise: &GateNoiseTable, reinit: bool) -> Result<()> {
    let e = [electron];
    let c = [carbon];
    let ec = [electron, carbon];
    reg.reset(carbon)?;
    reg.depolarize(carbon, noise.p_carbon_init)?;
    reg.noisy_gate(&rotation(Rotation::RY, -FRAC_PI_2), noise.p_rx_electron, &e)?;
    reg.noisy_gate(&rotation(Rotation::RZ, -FRAC_PI_2), noise.p_rz_carbon, &c)?;
    reg.noisy_gate(&rotation(Rotation::RCX, FRAC_PI_2), noise.p_rcx, &ec)?;
    reg.noisy_gate(&rotation(Rotation::RX, FRAC_PI_2), noise.p_rx_electron, &e)?;
    reg.noisy_gate(&rotation(Rotation::RZ, FRAC_PI_2), noise.p_rz_carbon, &c)?;
    reg.noisy_gate(&rotation(Rotation::RCX, -FRAC_PI_2), noise.p_rcx, &ec)?;
    if reinit {
        reg.reset(electron)?;
        reg.depolarize(electron, noise.p_electron_init)?;
    }
    Ok(())
}

fn zero_state() -> DensityMatrix {
    PureState::basis(2, 0).expect("basis state").density()
}

fn storage(reg: &mut Register, qubit: usize, opts: &MoveOptions) -> Result<()> {
    if let Some((channel, t)) = opts.storage {
        reg.channel(qubit, &channel, t)?;
    }
    Ok(())
}

fn checked_input(x: &CMatrix) -> Result<Register> {
    if x.shape() != (2, 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: x.nrows(),
        });
    }
    Register::from_operator(x.clone())
}

/// The SD move as a linear map on single-qubit operators: the input sits
/// on the electron, the output is read from the carbon.
pub fn sd_move_map(noise: &GateNoiseTable, opts: &MoveOptions) -> Result<impl Fn(&CMatrix) -> Result<CMatrix>> {
    noise.validate()?;
    let (noise, opts) = (*noise, *opts);
    Ok(move |x: &CMatrix| {
        let mut reg = checked_input(x)?;
        reg.push(&zero_state())?;
        storage(&mut reg, 0, &opts)?;
        sd_ops(&mut reg, 0, 1, &noise, opts.electron_reinit)?;
        reg.reduce(&[1])
    })
}

fn hadamard_cnot() -> GateMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let had = linalg::real_diag(&[h, -h]) + linalg::from_rows(&[&[linalg::ZERO, linalg::c(h, 0.0)], &[linalg::c(h, 0.0), linalg::ZERO]]);
    let mut cnot = CMatrix::zeros(4, 4);
    for (r, c) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        cnot[(r, c)] = linalg::ONE;
    }
    GateMatrix::new(cnot * linalg::kron(&had, &linalg::identity(2))).expect("unitary")
}

const EN: usize = 0;
const CN: usize = 1;
const EC: usize = 2;

/// All four unnormalized branch outputs `(m1, m2)` of the DD move, indexed
/// `2 m1 + m2`.
fn dd_branches(x: &CMatrix, noise: &GateNoiseTable, opts: &MoveOptions) -> Result<[CMatrix; 4]> {
    let mut reg = checked_input(x)?;
    reg.push(&zero_state())?;
    reg.push(&zero_state())?;
    storage(&mut reg, EN, opts)?;
    sd_ops(&mut reg, EN, CN, noise, false)?;

    reg.reset(EN)?;
    reg.reset(EC)?;
    reg.apply(&hadamard_cnot(), &[EN, EC])?;

    reg.noisy_gate(&rotation(Rotation::RCX, FRAC_PI_2), noise.p_rcx, &[EN, CN])?;
    reg.noisy_gate(&rotation(Rotation::RX, -FRAC_PI_2), noise.p_rx_electron, &[EN])?;

    let mut out: [CMatrix; 4] = std::array::from_fn(|_| CMatrix::zeros(2, 2));
    for m1 in 0..2u8 {
        let mut first = reg.project(EN, m1)?;
        first.reset(EN)?;
        if opts.electron_reinit {
            first.depolarize(EN, noise.p_electron_init)?;
        }
        first.noisy_gate(&rotation(Rotation::RX, FRAC_PI_2), noise.p_rx_electron, &[EN])?;
        first.noisy_gate(&rotation(Rotation::RCY, FRAC_PI_2), noise.p_rcy, &[EN, CN])?;
        first.noisy_gate(&rotation(Rotation::RY, FRAC_PI_2), noise.p_rx_electron, &[EN])?;
        for m2 in 0..2u8 {
            let mut second = first.project(EN, m2)?;
            let c1 = if m1 == 0 { Rotation::RY } else { Rotation::RX };
            second.noisy_gate(&rotation(c1, PI), noise.p_rx_electron, &[EC])?;
            if m2 == 0 {
                second.noisy_gate(&rotation(Rotation::RX, PI), noise.p_rx_electron, &[EC])?;
            }
            out[usize::from(2 * m1 + m2)] = second.reduce(&[EC])?;
        }
    }
    Ok(out)
}

/// The DD move as a linear map. `branch = None` sums over all measurement
/// outcomes; `Some((m1, m2))` keeps only that (unnormalized) branch.
pub fn dd_move_map(
    noise: &GateNoiseTable,
    opts: &MoveOptions,
    branch: Option<(u8, u8)>,
) -> Result<impl Fn(&CMatrix) -> Result<CMatrix>> {
    noise.validate()?;
    if let Some((m1, m2)) = branch {
        if m1 > 1 || m2 > 1 {
            return Err(Error::param("branch", format!("outcomes must be 0 or 1, got ({m1}, {m2})")));
        }
    }
    let (noise, opts) = (*noise, *opts);
    Ok(move |x: &CMatrix| {
        let all = dd_branches(x, &noise, &opts)?;
        Ok(match branch {
            Some((m1, m2)) => all[usize::from(2 * m1 + m2)].clone(),
            None => all.into_iter().fold(CMatrix::zeros(2, 2), |acc, b| acc + b),
        })
    })
}

/// Born probabilities of the four DD outcomes `(m1, m2)`, indexed `2 m1 + m2`.
pub fn dd_branch_probabilities(noise: &GateNoiseTable, input: &MoveInput, opts: &MoveOptions) -> Result<[f64; 4]> {
    noise.validate()?;
    let x = match input {
        MoveInput::Qubit(rho) => rho.matrix().clone(),
        MoveInput::EntangledHalf => linalg::identity(2).scale(0.5),
    };
    if x.shape() != (2, 2) {
        return Err(Error::UnsupportedDimension(x.nrows()));
    }
    let branches = dd_branches(&x, noise, opts)?;
    Ok(branches.map(|b| b.trace().re))
}

fn phi_fidelity(tau: &CMatrix) -> f64 {
    let phi = PureState::phi_plus();
    let v = phi.amplitudes();
    (v.adjoint() * tau * v)[(0, 0)].re
}

fn outcome<F>(map: F, input: &MoveInput, branch: Option<(u8, u8)>) -> Result<CircuitOutcome>
where
    F: Fn(&CMatrix) -> Result<CMatrix>,
{
    let tau = choi_from_map(&map)?;
    let weight = tau.trace().re;
    if !(weight > 0.0) {
        return Err(Error::TraceNotOne(weight));
    }
    let tau = tau.unscale(weight);
    let post = match input {
        MoveInput::EntangledHalf => tau.clone(),
        MoveInput::Qubit(rho) => {
            let out = map(rho.matrix())?;
            let tr = out.trace().re;
            if !(tr > 0.0) {
                return Err(Error::TraceNotOne(tr));
            }
            out.unscale(tr)
        }
    };
    Ok(CircuitOutcome {
        post_state: DensityMatrix::new(post)?,
        post_move_gate_fidelity: gate_fidelity_from_choi(&tau)?.clamp(0.0, 1.0),
        post_move_ent_fidelity: phi_fidelity(&tau).clamp(0.0, 1.0),
        branch,
    })
}

fn check_input(input: &MoveInput) -> Result<()> {
    if let MoveInput::Qubit(rho) = input {
        if rho.dim() != 2 {
            return Err(Error::UnsupportedDimension(rho.dim()));
        }
    }
    Ok(())
}

/// Runs the SD move. Fidelities are those of the whole input-to-carbon
/// channel (storage included), computed from its Choi state.
pub fn sd_move_circuit(noise: &GateNoiseTable, input: &MoveInput, opts: &MoveOptions) -> Result<CircuitOutcome> {
    check_input(input)?;
    outcome(sd_move_map(noise, opts)?, input, None)
}

/// Runs the DD move. In sampled mode the reported fidelities are those of
/// the channel conditioned on the drawn outcomes.
pub fn dd_move_circuit(
    noise: &GateNoiseTable,
    input: &MoveInput,
    opts: &MoveOptions,
    mode: DdMode,
) -> Result<CircuitOutcome> {
    check_input(input)?;
    match mode {
        DdMode::BranchAveraged => outcome(dd_move_map(noise, opts, None)?, input, None),
        DdMode::Sampled { seed } => {
            let probs = dd_branch_probabilities(noise, input, opts)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let total: f64 = probs.iter().sum();
            let mut u = rng.random::<f64>() * total;
            let mut index = 3;
            for (k, p) in probs.iter().enumerate() {
                if u < *p {
                    index = k;
                    break;
                }
                u -= p;
            }
            let branch = ((index / 2) as u8, (index % 2) as u8);
            outcome(dd_move_map(noise, opts, Some(branch))?, input, Some(branch))
        }
    }
}
