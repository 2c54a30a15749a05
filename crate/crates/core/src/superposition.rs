//! Chain U₃ applied to a superposition of inputs entangled with a register Q.
//!
//! The reference slot uses the θ = 0 angle convention with the |+>-reference
//! head, so q₃ reads 0 with probability κ·cos³(2x − β) + ½ per input, and
//! Σ|c_l|²·(κ·cos³(2x_l − β) + ½) for a superposed input.

use num_complex::Complex64;

use crate::circuit::{run, Circuit, Gate, RegisterLayout};
use crate::compiler::{angles_zero_theta, un_gates, HeadMode, Placement, SlotSpec, UnOptions};
use crate::error::{Error, Result};
use crate::oracle::output_un_probability;
use crate::statevector::{prob_of_outcome, State};

pub const REFERENCE_BETA: f64 = 0.2384;
/// Rounded constant quoted for this experiment, kept for comparison only.
pub const QUOTED_KAPPA: f64 = 0.2362;

const CHAIN: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionSpec {
    pub x_values: Vec<f64>,
    pub c: Vec<f64>,
}

impl SuperpositionSpec {
    pub fn new(x_values: Vec<f64>, c: Vec<f64>) -> Result<Self> {
        if x_values.is_empty() || x_values.len() != c.len() {
            return Err(Error::Validation(format!(
                "{} inputs with {} amplitudes",
                x_values.len(),
                c.len()
            )));
        }
        let norm: f64 = c.iter().map(|v| v * v).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Validation(format!("amplitudes have squared norm {norm}")));
        }
        Ok(Self { x_values, c })
    }

    /// Two inputs with c₀ = cos(θ/2), c₁ = sin(θ/2).
    pub fn pair(x0: f64, x1: f64, theta_sup: f64) -> Self {
        let (s, c) = (theta_sup / 2.0).sin_cos();
        Self {
            x_values: vec![x0, x1],
            c: vec![c, s],
        }
    }

    fn q_bits(&self) -> usize {
        let l = self.x_values.len();
        if l <= 1 {
            0
        } else {
            (l - 1).ilog2() as usize + 1
        }
    }
}

/// U₃ slot with β_k = 0.2384 in the θ = 0 convention.
pub fn reference_slot() -> SlotSpec {
    let beta = vec![REFERENCE_BETA; CHAIN];
    let links = angles_zero_theta(&beta);
    SlotSpec {
        n: CHAIN,
        gamma: 1.0,
        sign: 1,
        alpha: crate::compiler::slot::chain_alpha(&links),
        beta,
        links,
    }
}

fn options() -> UnOptions {
    UnOptions {
        head: HeadMode::PlusReference,
        placement: Placement::Leading,
        skip_hadamards: false,
    }
}

/// Coefficient κ of cos³(2x − β₁) in P₀(q₃), from the slot's angles: every
/// link phase equals β₁ mod π, so P₀ − ½ peaks (in absolute value) at x = β₁/2.
pub fn slot_kappa(slot: &SlotSpec) -> f64 {
    let x_peak = slot.beta[0] / 2.0;
    0.5 - output_un_probability(&slot.links, slot.sign_f64(), 0.25, x_peak)
}

/// cos²(θ/2)·[κcos³(2x₀ − β) + ½] + sin²(θ/2)·[κcos³(2x₁ − β) + ½].
pub fn p0_theory(x0: f64, x1: f64, theta_sup: f64, kappa: f64, beta: f64) -> f64 {
    let branch = |x: f64| kappa * (2.0 * x - beta).cos().powi(3) + 0.5;
    let (s, c) = (theta_sup / 2.0).sin_cos();
    c * c * branch(x0) + s * s * branch(x1)
}

fn layout(q_bits: usize) -> RegisterLayout {
    RegisterLayout {
        qprime: Vec::new(),
        qdprime: vec![0, 1],
        q: (2..2 + CHAIN).collect(),
        extra: (2 + CHAIN..2 + CHAIN + q_bits).collect(),
    }
}

fn check_slot(slot: &SlotSpec) -> Result<()> {
    if slot.n != CHAIN {
        return Err(Error::Validation(format!("superposition needs a U3 slot, got n={}", slot.n)));
    }
    Ok(())
}

/// Six qubits (q″₁, q″₂, q₁, q₂, q₃, Q): Ry(θ) on Q, Q-controlled input
/// loading of x₀ (Q = 0) and x₁ (Q = 1), then U₃.
pub fn build_superposition_circuit(x0: f64, x1: f64, theta_sup: f64, slot: &SlotSpec) -> Result<Circuit> {
    check_slot(slot)?;
    let mut c = Circuit::new(layout(1));
    let q_reg = c.layout.extra[0];
    c.push(Gate::ry(q_reg, theta_sup));
    for &q in &c.layout.q.clone() {
        c.push(Gate::ry(q, 2.0 * x0).ctrl0(q_reg));
        c.push(Gate::ry(q, 2.0 * x1).ctrl(q_reg));
    }
    let gates = un_gates(slot, &c.layout, options())?;
    c.extend(gates);
    Ok(c)
}

/// P₀ of the last chain qubit after running the circuit from |0…0>.
pub fn simulate_p0(circuit: &Circuit) -> Result<f64> {
    let s = run(circuit, crate::statevector::new_state(circuit.num_qubits)?)?;
    prob_of_outcome(&s, circuit.layout.last_q(), false)
}

/// Σ_l c_l |l>_Q ⊗ |ψ(x_l)>^⊗3 ⊗ |00>_{q″}, built directly.
pub fn superposed_input(spec: &SuperpositionSpec) -> Result<State> {
    let l = layout(spec.q_bits());
    let n = l.num_qubits();
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (label, (&x, &c)) in spec.x_values.iter().zip(&spec.c).enumerate() {
        let q_index: usize = l.extra.iter().enumerate().map(|(i, &q)| ((label >> i) & 1) << q).sum();
        for bits in 0..1usize << CHAIN {
            let mut amp = c;
            let mut idx = q_index;
            for (i, &q) in l.q.iter().enumerate() {
                if (bits >> i) & 1 == 1 {
                    amp *= x.sin();
                    idx |= 1 << q;
                } else {
                    amp *= x.cos();
                }
            }
            amps[idx] += amp;
        }
    }
    State::from_amplitudes(amps)
}

/// P₀(q₃) after applying U₃ to a prepared superposed input.
pub fn p0_from_input(spec: &SuperpositionSpec, slot: &SlotSpec) -> Result<f64> {
    check_slot(slot)?;
    let l = layout(spec.q_bits());
    let mut c = Circuit::new(l);
    c.extend(un_gates(slot, &c.layout, options())?);
    let s = run(&c, superposed_input(spec)?)?;
    prob_of_outcome(&s, c.layout.last_q(), false)
}
