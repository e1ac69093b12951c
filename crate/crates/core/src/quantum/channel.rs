use serde::{Deserialize, Serialize};

use super::gates::Pauli;
use super::state::DensityMatrix;
use crate::linalg::{self, CMatrix};
use crate::{Error, Result};

/// Memory lifetimes in seconds.
///
/// `t_depol` is only read by the depolarizing channel; when omitted from a
/// config it defaults to `t1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemoryParams {
    #[serde(default)]
    pub t_depol: Option<f64>,
    pub t1: f64,
    pub t2: f64,
}

impl MemoryParams {
    pub fn new(t_depol: f64, t1: f64, t2: f64) -> Result<Self> {
        let m = Self {
            t_depol: Some(t_depol),
            t1,
            t2,
        };
        m.validate()?;
        Ok(m)
    }

    /// Lifetimes for the composite storage channel (`t2 <= 2 t1`).
    pub fn composite(t1: f64, t2: f64) -> Result<Self> {
        let m = Self {
            t_depol: None,
            t1,
            t2,
        };
        m.validate_composite()?;
        Ok(m)
    }

    pub fn t(&self) -> f64 {
        self.t_depol.unwrap_or(self.t1)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("t_depol", self.t()), ("t1", self.t1), ("t2", self.t2)] {
            if !(value > 0.0) {
                return Err(Error::param(name, format!("lifetime must be positive, got {value}")));
            }
        }
        Ok(())
    }

    pub fn validate_composite(&self) -> Result<()> {
        self.validate()?;
        if self.t2 > 2.0 * self.t1 {
            return Err(Error::param(
                "t2",
                format!("composite channel needs t2 <= 2 t1, got t1={} t2={}", self.t1, self.t2),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelKind {
    Depolarizing,
    Dephasing,
    AmplitudeDamping,
    /// Dephasing applied after amplitude damping, with the dephasing rate
    /// reduced so the total coherence decay is `e^{-t/T2}`.
    Composite,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 4] = [
        ChannelKind::Depolarizing,
        ChannelKind::Dephasing,
        ChannelKind::AmplitudeDamping,
        ChannelKind::Composite,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseChannel {
    kind: ChannelKind,
    memory: MemoryParams,
}

/// Time-dependent fidelity `F(t) = constant + sum_k weight_k e^{-rate_k t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayTerms {
    pub constant: f64,
    pub terms: Vec<(f64, f64)>,
}

impl DecayTerms {
    pub fn eval(&self, t: f64) -> f64 {
        self.constant
            + self
                .terms
                .iter()
                .map(|&(w, rate)| w * (-rate * t).exp())
                .sum::<f64>()
    }
}

fn check_time(t: f64) -> Result<()> {
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    Ok(())
}

impl NoiseChannel {
    pub fn new(kind: ChannelKind, memory: MemoryParams) -> Result<Self> {
        match kind {
            ChannelKind::Composite => memory.validate_composite()?,
            _ => memory.validate()?,
        }
        Ok(Self { kind, memory })
    }

    pub fn composite(t1: f64, t2: f64) -> Result<Self> {
        Self::new(ChannelKind::Composite, MemoryParams::composite(t1, t2)?)
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn memory(&self) -> &MemoryParams {
        &self.memory
    }

    /// `p = (1 - e^{-t/T}) / 4`.
    pub fn depolarizing_prob(&self, t: f64) -> f64 {
        0.25 * -(-t / self.memory.t()).exp_m1()
    }

    /// `p = (1 - e^{-t/T2}) / 2`.
    pub fn dephasing_prob(&self, t: f64) -> f64 {
        0.5 * -(-t / self.memory.t2).exp_m1()
    }

    /// `gamma = 1 - e^{-t/T1}`.
    pub fn damping_gamma(&self, t: f64) -> f64 {
        -(-t / self.memory.t1).exp_m1()
    }

    /// `1 - gamma = e^{-t/T1}`.
    pub fn damping_survival(&self, t: f64) -> f64 {
        (-t / self.memory.t1).exp()
    }

    /// Dephasing strength of the composite channel,
    /// `p = (1 - e^{-t (1/T2 - 1/(2 T1))}) / 2`.
    pub fn composite_dephasing_prob(&self, t: f64) -> f64 {
        let rate = 1.0 / self.memory.t2 - 0.5 / self.memory.t1;
        0.5 * -(-t * rate).exp_m1()
    }

    /// Kraus operators at elapsed time `t`.
    pub fn kraus(&self, t: f64) -> Result<Vec<CMatrix>> {
        check_time(t)?;
        let paulis = || Pauli::ALL.map(Pauli::matrix);
        Ok(match self.kind {
            ChannelKind::Depolarizing => {
                let p = self.depolarizing_prob(t);
                let mut ops = vec![linalg::identity(2).scale((1.0 - 3.0 * p).sqrt())];
                ops.extend(paulis().into_iter().map(|s| s.scale(p.sqrt())));
                ops
            }
            ChannelKind::Dephasing => {
                let p = self.dephasing_prob(t);
                vec![
                    linalg::identity(2).scale((1.0 - p).sqrt()),
                    Pauli::Z.matrix().scale(p.sqrt()),
                ]
            }
            ChannelKind::AmplitudeDamping => damping_kraus(self.damping_gamma(t), self.damping_survival(t)).to_vec(),
            ChannelKind::Composite => {
                let p = self.composite_dephasing_prob(t);
                let z = Pauli::Z.matrix();
                damping_kraus(self.damping_gamma(t), self.damping_survival(t))
                    .iter()
                    .flat_map(|m| [m.scale((1.0 - p).sqrt()), (&z * m).scale(p.sqrt())])
                    .collect()
            }
        })
    }

    /// Applies the channel to an arbitrary 2x2 operator (the map is linear,
    /// so inputs need not be states).
    pub fn apply_matrix(&self, t: f64, m: &CMatrix) -> Result<CMatrix> {
        check_time(t)?;
        if m.shape() != (2, 2) {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: m.nrows(),
            });
        }
        Ok(match self.kind {
            ChannelKind::Depolarizing => depolarize(self.depolarizing_prob(t), m),
            ChannelKind::Dephasing => dephase(self.dephasing_prob(t), m),
            ChannelKind::AmplitudeDamping => amplitude_damp(self.damping_gamma(t), self.damping_survival(t), m),
            ChannelKind::Composite => dephase(
                self.composite_dephasing_prob(t),
                &amplitude_damp(self.damping_gamma(t), self.damping_survival(t), m),
            ),
        })
    }

    pub fn apply(&self, t: f64, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != 2 {
            return Err(Error::UnsupportedDimension(rho.dim()));
        }
        let out = self.apply_matrix(t, rho.matrix())?;
        Ok(DensityMatrix::from_trusted(out))
    }

    /// Applies the channel to one qubit of an `n`-qubit register.
    pub fn apply_to_qubit(&self, t: f64, rho: &CMatrix, qubit: usize, num_qubits: usize) -> Result<CMatrix> {
        let mut out = CMatrix::zeros(rho.nrows(), rho.ncols());
        for k in self.kraus(t)? {
            let full = linalg::embed(&k, &[qubit], num_qubits)?;
            out += &full * rho * full.adjoint();
        }
        Ok(out)
    }

    /// Average gate fidelity as a constant plus decaying exponentials.
    pub fn fidelity_terms(&self) -> DecayTerms {
        let MemoryParams { t1, t2, .. } = self.memory;
        match self.kind {
            ChannelKind::Depolarizing => DecayTerms {
                constant: 0.5,
                terms: vec![(0.5, 1.0 / self.memory.t())],
            },
            ChannelKind::Dephasing => DecayTerms {
                constant: 2.0 / 3.0,
                terms: vec![(1.0 / 3.0, 1.0 / t2)],
            },
            ChannelKind::AmplitudeDamping => DecayTerms {
                constant: 0.5,
                terms: vec![(1.0 / 6.0, 1.0 / t1), (1.0 / 3.0, 0.5 / t1)],
            },
            ChannelKind::Composite => DecayTerms {
                constant: 0.5,
                terms: vec![(1.0 / 6.0, 1.0 / t1), (1.0 / 3.0, 1.0 / t2)],
            },
        }
    }
}

/// Kraus pair for damping strength `gamma`, with the survival probability
/// `1 - gamma` passed separately so it keeps full precision near zero.
fn damping_kraus(gamma: f64, survival: f64) -> [CMatrix; 2] {
    let m0 = linalg::real_diag(&[1.0, survival.sqrt()]);
    let mut m1 = CMatrix::zeros(2, 2);
    m1[(0, 1)] = linalg::c(gamma.sqrt(), 0.0);
    [m0, m1]
}

/// `(1 - 3p) m + p (X m X + Y m Y + Z m Z)`.
pub fn depolarize(p: f64, m: &CMatrix) -> CMatrix {
    let mut out = m.scale(1.0 - 3.0 * p);
    for s in Pauli::ALL.map(Pauli::matrix) {
        out += (&s * m * &s).scale(p);
    }
    out
}

fn dephase(p: f64, m: &CMatrix) -> CMatrix {
    let z = Pauli::Z.matrix();
    m.scale(1.0 - p) + (&z * m * &z).scale(p)
}

fn amplitude_damp(gamma: f64, survival: f64, m: &CMatrix) -> CMatrix {
    let [m0, m1] = damping_kraus(gamma, survival);
    &m0 * m * m0.adjoint() + &m1 * m * m1.adjoint()
}

/// Single-qubit depolarizing with probability `p` on `qubit` of an
/// `num_qubits` register; the Bloch vector of that qubit shrinks by `1 - 4p`.
pub fn depolarize_qubit(p: f64, rho: &CMatrix, qubit: usize, num_qubits: usize) -> Result<CMatrix> {
    if !(0.0..=0.25).contains(&p) {
        return Err(Error::param("p", format!("depolarizing probability {p} outside [0, 1/4]")));
    }
    if p == 0.0 {
        return Ok(rho.clone());
    }
    let mut out = rho.scale(1.0 - 3.0 * p);
    for s in Pauli::ALL.map(Pauli::matrix) {
        let full = linalg::embed(&s, &[qubit], num_qubits)?;
        out += (&full * rho * &full).scale(p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs_diff};
    use crate::quantum::state::{validate, PureState};

    fn mem() -> MemoryParams {
        MemoryParams::new(0.7, 1.3, 0.9).unwrap()
    }

    #[test]
    fn kraus_sets_are_complete() {
        for kind in ChannelKind::ALL {
            let ch = NoiseChannel::new(kind, mem()).unwrap();
            for t in [0.0, 0.1, 1.0, 5.0] {
                let sum = ch
                    .kraus(t)
                    .unwrap()
                    .iter()
                    .fold(CMatrix::zeros(2, 2), |acc, k| acc + k.adjoint() * k);
                assert!(max_abs_diff(&sum, &linalg::identity(2)) < 1e-14, "{kind:?} t={t}");
            }
        }
    }

    #[test]
    fn kraus_and_mixture_forms_agree() {
        let rho = PureState::normalized(vec![c(0.8, 0.1), c(-0.2, 0.55)]).unwrap().density();
        for kind in ChannelKind::ALL {
            let ch = NoiseChannel::new(kind, mem()).unwrap();
            let direct = ch.apply(0.4, &rho).unwrap();
            let via_kraus = ch.apply_to_qubit(0.4, rho.matrix(), 0, 1).unwrap();
            assert!(max_abs_diff(direct.matrix(), &via_kraus) < 1e-14);
        }
    }

    #[test]
    fn zero_time_is_identity() {
        let rho = PureState::normalized(vec![c(0.3, 0.0), c(0.1, 0.9)]).unwrap().density();
        for kind in ChannelKind::ALL {
            let ch = NoiseChannel::new(kind, mem()).unwrap();
            let out = ch.apply(0.0, &rho).unwrap();
            assert!(max_abs_diff(out.matrix(), rho.matrix()) < 1e-12);
        }
    }

    #[test]
    fn channel_examples() {
        let rho = PureState::normalized(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap().density();
        let depol = NoiseChannel::new(ChannelKind::Depolarizing, mem()).unwrap();
        let out = depol.apply(1e4, &rho).unwrap();
        assert!(max_abs_diff(out.matrix(), &linalg::identity(2).scale(0.5)) < 1e-12);

        let zero = PureState::basis(2, 0).unwrap().density();
        let dephase = NoiseChannel::new(ChannelKind::Dephasing, mem()).unwrap();
        for t in [0.1, 1.0, 30.0] {
            assert!(max_abs_diff(dephase.apply(t, &zero).unwrap().matrix(), zero.matrix()) < 1e-15);
        }

        let t1 = mem().t1;
        let one = PureState::basis(2, 1).unwrap().density();
        let damp = NoiseChannel::new(ChannelKind::AmplitudeDamping, mem()).unwrap();
        let e = (-1.0f64).exp();
        let expected = linalg::real_diag(&[1.0 - e, e]);
        assert!(max_abs_diff(damp.apply(t1, &one).unwrap().matrix(), &expected) < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let ch = NoiseChannel::new(ChannelKind::Dephasing, mem()).unwrap();
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(matches!(ch.apply(-1.0, &rho), Err(Error::NegativeTime(_))));
        let big = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(matches!(ch.apply(1.0, &big), Err(Error::UnsupportedDimension(4))));
        assert!(NoiseChannel::composite(1.0, 2.5).is_err());
        assert!(NoiseChannel::composite(1.0, 2.0).is_ok());
        assert!(MemoryParams::new(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn depolarizing_identity_weight_form() {
        let rho = PureState::normalized(vec![c(0.3, 0.2), c(0.1, 0.9)]).unwrap().density();
        for p in [0.0, 0.01, 0.1, 0.25] {
            let mixture = depolarize(p, rho.matrix());
            let white = rho.matrix().scale(1.0 - 4.0 * p) + linalg::identity(2).scale(2.0 * p);
            assert!(max_abs_diff(&mixture, &white) < 1e-15);
        }
    }

    #[test]
    fn two_depolarizings_compose_multiplicatively() {
        let p = 0.03;
        let once = 1.0 - 4.0 * p;
        let q = (1.0 - once * once) / 4.0;
        let rho = PureState::normalized(vec![c(0.9, 0.0), c(0.3, -0.3)]).unwrap().density();
        let twice = depolarize(p, &depolarize(p, rho.matrix()));
        assert!(max_abs_diff(&twice, &depolarize(q, rho.matrix())) < 1e-15);
    }

    #[test]
    fn outputs_are_states() {
        let rho = PureState::normalized(vec![c(0.5, 0.5), c(0.5, -0.5)]).unwrap().density();
        for kind in ChannelKind::ALL {
            let ch = NoiseChannel::new(kind, mem()).unwrap();
            for t in [0.01, 0.5, 3.0] {
                validate(ch.apply(t, &rho).unwrap().matrix()).unwrap();
            }
        }
    }

    #[test]
    fn decay_terms_at_zero_sum_to_one() {
        for kind in ChannelKind::ALL {
            let ch = NoiseChannel::new(kind, mem()).unwrap();
            assert!((ch.fidelity_terms().eval(0.0) - 1.0).abs() < 1e-15);
        }
    }
}
