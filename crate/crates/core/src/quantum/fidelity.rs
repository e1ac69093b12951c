use super::channel::{ChannelKind, NoiseChannel};
use super::gates::Pauli;
use crate::{Error, Result};

fn check_time(t: f64) -> Result<()> {
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    Ok(())
}

/// Average gate fidelity of `N_t o G` against `G`; independent of `G`.
pub fn gate_fidelity_closed(channel: &NoiseChannel, t: f64) -> Result<f64> {
    check_time(t)?;
    let m = channel.memory();
    Ok(match channel.kind() {
        ChannelKind::Depolarizing => 0.5 * (1.0 + (-t / m.t()).exp()),
        ChannelKind::Dephasing => (2.0 + (-t / m.t2).exp()) / 3.0,
        ChannelKind::AmplitudeDamping => {
            (3.0 + (-t / m.t1).exp() + 2.0 * (-t / (2.0 * m.t1)).exp()) / 6.0
        }
        ChannelKind::Composite => (3.0 + (-t / m.t1).exp() + 2.0 * (-t / m.t2).exp()) / 6.0,
    })
}

/// `1/2 + (1/12) sum_sigma Tr[sigma N(sigma)]`, evaluated by pushing each
/// Pauli matrix through the channel.
pub fn gate_fidelity_bowdrey(channel: &NoiseChannel, t: f64) -> Result<f64> {
    check_time(t)?;
    let mut sum = 0.0;
    for p in Pauli::ALL {
        let s = p.matrix();
        let out = channel.apply_matrix(t, &s)?;
        sum += (&s * out).trace().re;
    }
    Ok(0.5 + sum / 12.0)
}

/// `F_e = ((d + 1) F_avg - 1) / d`.
pub fn ent_fidelity_from_gate(f_avg: f64, d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::param("d", format!("dimension must be at least 2, got {d}")));
    }
    let d = d as f64;
    Ok(((d + 1.0) * f_avg - 1.0) / d)
}

/// `F_avg = (d F_e + 1) / (d + 1)`.
pub fn gate_fidelity_from_ent(f_e: f64, d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::param("d", format!("dimension must be at least 2, got {d}")));
    }
    let d = d as f64;
    Ok((d * f_e + 1.0) / (d + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::channel::MemoryParams;

    fn channel(kind: ChannelKind, t: f64, t1: f64, t2: f64) -> NoiseChannel {
        NoiseChannel::new(kind, MemoryParams::new(t, t1, t2).unwrap()).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        for kind in ChannelKind::ALL {
            let ch = channel(kind, 1.0, 2.0, 1.5);
            assert_eq!(gate_fidelity_closed(&ch, 0.0).unwrap(), 1.0);
        }
        let comp = channel(ChannelKind::Composite, 1.0, 1.0, 1.0);
        let expected = (3.0 + 3.0 * (-1.0f64).exp()) / 6.0;
        assert!((gate_fidelity_closed(&comp, 1.0).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.68394).abs() < 1e-5);

        let depol = channel(ChannelKind::Depolarizing, 3.0, 1.0, 1.0);
        let f = gate_fidelity_closed(&depol, 3.0 * std::f64::consts::LN_2).unwrap();
        assert!((f - 0.75).abs() < 1e-15);
    }

    #[test]
    fn bowdrey_examples() {
        let deph = channel(ChannelKind::Dephasing, 1.0, 1.0, 0.37);
        for t in [0.01, 0.2, 1.7] {
            let a = gate_fidelity_bowdrey(&deph, t).unwrap();
            let b = gate_fidelity_closed(&deph, t).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
        let damp = channel(ChannelKind::AmplitudeDamping, 1.0, 2.5, 1.0);
        let f = gate_fidelity_bowdrey(&damp, 2.5).unwrap();
        let expected = (3.0 + (-1.0f64).exp() + 2.0 * (-0.5f64).exp()) / 6.0;
        assert!((f - expected).abs() < 1e-12);
        assert!((gate_fidelity_bowdrey(&damp, 0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_decay_terms() {
        for kind in ChannelKind::ALL {
            let ch = channel(kind, 0.4, 1.1, 0.8);
            for t in [0.0, 0.3, 2.0] {
                let a = gate_fidelity_closed(&ch, t).unwrap();
                assert!((a - ch.fidelity_terms().eval(t)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn monotone_in_time() {
        for kind in ChannelKind::ALL {
            let ch = channel(kind, 0.4, 1.1, 0.8);
            let mut prev = 1.0;
            for k in 0..200 {
                let f = gate_fidelity_closed(&ch, k as f64 * 0.05).unwrap();
                assert!(f <= prev + 1e-15);
                prev = f;
            }
        }
    }

    #[test]
    fn composite_limits() {
        let t2 = 0.3;
        let t = 0.2;
        let comp = channel(ChannelKind::Composite, 1.0, 1e9 * t2, t2);
        let deph = channel(ChannelKind::Dephasing, 1.0, 1e9 * t2, t2);
        let diff = gate_fidelity_closed(&comp, t).unwrap() - gate_fidelity_closed(&deph, t).unwrap();
        assert!(diff.abs() < 1e-6);

        let t1 = 0.5;
        let comp = channel(ChannelKind::Composite, 1.0, t1, 2.0 * t1);
        let damp = channel(ChannelKind::AmplitudeDamping, 1.0, t1, 2.0 * t1);
        let diff = gate_fidelity_closed(&comp, t).unwrap() - gate_fidelity_closed(&damp, t).unwrap();
        assert!(diff.abs() < 1e-12);
    }

    #[test]
    fn ent_conversion() {
        assert_eq!(ent_fidelity_from_gate(1.0, 2).unwrap(), 1.0);
        assert!((ent_fidelity_from_gate(0.5, 2).unwrap() - 0.25).abs() < 1e-15);
        for fe in [0.25, 0.6, 0.93, 1.0] {
            let back = ent_fidelity_from_gate(gate_fidelity_from_ent(fe, 2).unwrap(), 2).unwrap();
            assert!((back - fe).abs() < 1e-14);
        }
        assert!(ent_fidelity_from_gate(0.9, 1).is_err());
        assert!(gate_fidelity_closed(&channel(ChannelKind::Dephasing, 1.0, 1.0, 1.0), -0.1).is_err());
    }
}
