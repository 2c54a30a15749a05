//! Slot-weight preparation: Σ √γ_n |n> on the q′ register.

use crate::circuit::{Circuit, Gate, Polarity, RegisterLayout};
use crate::error::{Error, Result};

/// Rotation tree on `qubits` (`qubits[0]` most significant). Level L emits
/// 2^L rotations on `qubits[L]`, each controlled by the L qubits above it;
/// zero-angle rotations are kept so the structure does not depend on γ.
pub fn upre_gates(gamma: &[f64], qubits: &[usize]) -> Result<Vec<Gate>> {
    let m = qubits.len();
    if gamma.len() != 1 << m {
        return Err(Error::Validation(format!(
            "{} weights for {m} qubits (need {})",
            gamma.len(),
            1usize << m
        )));
    }
    if let Some(g) = gamma.iter().find(|g| !(g.is_finite() && **g >= 0.0)) {
        return Err(Error::Validation(format!("slot weight {g} is negative or not finite")));
    }
    let total: f64 = gamma.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::Validation(format!("slot weights sum to {total}, expected 1")));
    }

    let mut gates = Vec::with_capacity((1 << m) - 1);
    for level in 0..m {
        let block = 1usize << (m - level);
        for prefix in 0..1usize << level {
            let lo = prefix * block;
            let a: f64 = gamma[lo..lo + block / 2].iter().sum();
            let b: f64 = gamma[lo + block / 2..lo + block].iter().sum();
            let omega = b.sqrt().atan2(a.sqrt());
            let mut g = Gate::ry(qubits[level], 2.0 * omega);
            for (i, &q) in qubits[..level].iter().enumerate() {
                let bit = (prefix >> (level - 1 - i)) & 1;
                g = g.with_control(q, if bit == 1 { Polarity::One } else { Polarity::Zero });
            }
            gates.push(g);
        }
    }
    Ok(gates)
}

/// Standalone U_pre circuit over qubits 0..M.
pub fn build_upre(gamma: &[f64]) -> Result<Circuit> {
    if !gamma.len().is_power_of_two() {
        return Err(Error::Validation(format!(
            "weight vector length {} is not a power of two",
            gamma.len()
        )));
    }
    let m = gamma.len().trailing_zeros() as usize;
    let layout = RegisterLayout {
        qprime: (0..m).collect(),
        qdprime: Vec::new(),
        q: Vec::new(),
        extra: Vec::new(),
    };
    let mut c = Circuit::new(layout);
    c.extend(upre_gates(gamma, &c.layout.qprime.clone())?);
    Ok(c)
}
