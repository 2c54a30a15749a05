//! Seeded shot sampling of one qubit's terminal measurement.
//!
//! Shots are Bernoulli draws from the exact marginal probability. The PRNG is
//! ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`), and a shot reads 1
//! when the next `f64` from `rand`'s standard uniform generator is below p.
//! Both are platform independent, so a seed fixes the record bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{run, Circuit};
use crate::error::{Error, Result};
use crate::statevector::{prob_of_outcome, State};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShotRecord {
    pub shots: u64,
    pub ones: u64,
    pub seed: u64,
    pub p_exact: f64,
}

impl ShotRecord {
    pub fn p_hat(&self) -> f64 {
        self.ones as f64 / self.shots as f64
    }
}

/// Draw `shots` Bernoulli(p) samples.
pub fn sample_probability(p: f64, shots: u64, seed: u64) -> Result<ShotRecord> {
    if shots == 0 {
        return Err(Error::Validation("shots must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Validation(format!("probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ones = (0..shots).filter(|_| rng.gen::<f64>() < p).count() as u64;
    Ok(ShotRecord {
        shots,
        ones,
        seed,
        p_exact: p,
    })
}

/// Sample `qubit` of an already prepared state.
pub fn sample_state(state: &State, qubit: usize, shots: u64, seed: u64) -> Result<ShotRecord> {
    let p = prob_of_outcome(state, qubit, true)?.clamp(0.0, 1.0);
    sample_probability(p, shots, seed)
}

/// Run `circuit` on its layout's input state for `input_x` and sample `qubit`.
pub fn sample_shots(circuit: &Circuit, input_x: f64, qubit: usize, shots: u64, seed: u64) -> Result<ShotRecord> {
    let state = run(circuit, circuit.layout.input_state(input_x)?)?;
    sample_state(&state, qubit, shots, seed)
}
