//! Dense statevector simulation.
//!
//! Qubit 0 is the least significant bit of the basis index.

use num_complex::Complex64;

use crate::circuit::{Gate, GateKind};
use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct State {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl State {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Build a state from raw amplitudes. The vector must have power-of-two
    /// length and unit norm (within 1e-9).
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Validation(format!(
                "amplitude vector length {len} is not a power of two >= 2"
            )));
        }
        let num_qubits = len.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: num_qubits,
                max: MAX_QUBITS,
            });
        }
        let norm = norm_sqr(&amplitudes);
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-9 {
            return Err(Error::Validation(format!(
                "amplitudes have squared norm {norm}, expected 1"
            )));
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    /// In-place variant of [`apply_gate`].
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        let (ctrl_mask, ctrl_value) = gate.control_masks();
        let dim = self.amplitudes.len();
        let amps = &mut self.amplitudes;
        match gate.kind {
            GateKind::Swap => {
                let (a, b) = (1usize << gate.targets[0], 1usize << gate.targets[1]);
                for i in 0..dim {
                    if i & a != 0 && i & b == 0 && i & ctrl_mask == ctrl_value {
                        amps.swap(i, i ^ a ^ b);
                    }
                }
            }
            kind => {
                let m = single_qubit_matrix(kind);
                let t = 1usize << gate.targets[0];
                for i in 0..dim {
                    if i & t == 0 && i & ctrl_mask == ctrl_value {
                        let j = i | t;
                        let (a0, a1) = (amps[i], amps[j]);
                        amps[i] = a0 * m[0][0] + a1 * m[0][1];
                        amps[j] = a0 * m[1][0] + a1 * m[1][1];
                    }
                }
            }
        }
        Ok(())
    }
}

fn norm_sqr(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

/// Real 2x2 matrix of a one-target gate kind, row-major.
fn single_qubit_matrix(kind: GateKind) -> [[f64; 2]; 2] {
    match kind {
        GateKind::Ry(theta) => {
            let (s, c) = (theta / 2.0).sin_cos();
            [[c, -s], [s, c]]
        }
        GateKind::H => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            [[r, r], [r, -r]]
        }
        GateKind::X => [[0.0, 1.0], [1.0, 0.0]],
        GateKind::Swap => unreachable!("swap is not a single-qubit gate"),
    }
}

/// The all-zeros basis state on `num_qubits` qubits.
pub fn new_state(num_qubits: usize) -> Result<State> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::Capacity {
            requested: num_qubits,
            max: MAX_QUBITS,
        });
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
    amplitudes[0] = Complex64::new(1.0, 0.0);
    Ok(State {
        num_qubits,
        amplitudes,
    })
}

/// Load cos x|0> + sin x|1> onto a qubit that is currently |0>.
pub fn prepare_psi_x(mut state: State, qubit: usize, x: f64) -> Result<State> {
    state.check_qubit(qubit)?;
    state.apply(&Gate::ry(qubit, 2.0 * x))?;
    Ok(state)
}

pub fn apply_gate(mut state: State, gate: &Gate) -> Result<State> {
    state.apply(gate)?;
    Ok(state)
}

/// Probability of reading `outcome` on `qubit`. Summed in index order so the
/// result is reproducible.
pub fn prob_of_outcome(state: &State, qubit: usize, outcome: bool) -> Result<f64> {
    state.check_qubit(qubit)?;
    let bit = 1usize << qubit;
    let want = if outcome { bit } else { 0 };
    Ok(state
        .amplitudes
        .iter()
        .enumerate()
        .filter(|(i, _)| i & bit == want)
        .map(|(_, a)| a.norm_sqr())
        .sum())
}
