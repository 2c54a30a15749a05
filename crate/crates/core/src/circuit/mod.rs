//! Gate IR, register layout, execution and gate census.

pub mod passes;
pub mod qasm;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevector::State;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    Ry(f64),
    H,
    X,
    Swap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    One,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub controls: Vec<Control>,
}

impl Gate {
    fn single(kind: GateKind, target: usize) -> Self {
        Self {
            kind,
            targets: vec![target],
            controls: Vec::new(),
        }
    }

    pub fn ry(target: usize, theta: f64) -> Self {
        Self::single(GateKind::Ry(theta), target)
    }

    pub fn h(target: usize) -> Self {
        Self::single(GateKind::H, target)
    }

    pub fn x(target: usize) -> Self {
        Self::single(GateKind::X, target)
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Self {
            kind: GateKind::Swap,
            targets: vec![a, b],
            controls: Vec::new(),
        }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Self::x(target).ctrl(control)
    }

    pub fn with_control(mut self, qubit: usize, polarity: Polarity) -> Self {
        self.controls.push(Control { qubit, polarity });
        self
    }

    /// Add a control that fires on |1>.
    pub fn ctrl(self, qubit: usize) -> Self {
        self.with_control(qubit, Polarity::One)
    }

    /// Add a control that fires on |0>.
    pub fn ctrl0(self, qubit: usize) -> Self {
        self.with_control(qubit, Polarity::Zero)
    }

    pub fn with_controls(mut self, controls: impl IntoIterator<Item = Control>) -> Self {
        self.controls.extend(controls);
        self
    }

    pub fn target(&self) -> usize {
        self.targets[0]
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls
            .iter()
            .map(|c| c.qubit)
            .chain(self.targets.iter().copied())
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let want = if self.kind == GateKind::Swap { 2 } else { 1 };
        if self.targets.len() != want {
            return Err(Error::InvalidGate(format!(
                "{:?} needs {want} target(s), got {}",
                self.kind,
                self.targets.len()
            )));
        }
        if let GateKind::Ry(theta) = self.kind {
            if !theta.is_finite() {
                return Err(Error::InvalidGate(format!("non-finite angle {theta}")));
            }
        }
        let mut seen: Vec<usize> = Vec::with_capacity(self.controls.len() + 2);
        for q in self.qubits() {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, num_qubits });
            }
            if seen.contains(&q) {
                return Err(Error::OverlappingQubits(q));
            }
            seen.push(q);
        }
        Ok(())
    }

    /// (mask, value) such that the gate fires on basis index i iff i & mask == value.
    pub(crate) fn control_masks(&self) -> (usize, usize) {
        self.controls.iter().fold((0, 0), |(m, v), c| {
            let bit = 1usize << c.qubit;
            match c.polarity {
                Polarity::One => (m | bit, v | bit),
                Polarity::Zero => (m | bit, v),
            }
        })
    }

    pub fn inverse(&self) -> Self {
        let mut g = self.clone();
        if let GateKind::Ry(theta) = g.kind {
            g.kind = GateKind::Ry(-theta);
        }
        g
    }
}

/// Inverse of a gate sequence: reversed order, rotations negated.
pub fn inverse(gates: &[Gate]) -> Vec<Gate> {
    gates.iter().rev().map(Gate::inverse).collect()
}

/// Named registers. `qprime[0]` is the most significant bit of the slot label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegisterLayout {
    pub qprime: Vec<usize>,
    pub qdprime: Vec<usize>,
    pub q: Vec<usize>,
    #[serde(default)]
    pub extra: Vec<usize>,
}

impl RegisterLayout {
    /// Packed layout: q' first, then the two q'', then the N input qubits.
    pub fn standard(m: usize, n: usize) -> Self {
        Self {
            qprime: (0..m).collect(),
            qdprime: vec![m, m + 1],
            q: (m + 2..m + 2 + n).collect(),
            extra: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.all().max().map_or(0, |q| q + 1)
    }

    pub fn last_q(&self) -> usize {
        *self.q.last().expect("layout has no input qubits")
    }

    fn all(&self) -> impl Iterator<Item = usize> + '_ {
        self.qprime
            .iter()
            .chain(&self.qdprime)
            .chain(&self.q)
            .chain(&self.extra)
            .copied()
    }

    pub fn validate(&self) -> Result<()> {
        if self.qdprime.len() != 2 {
            return Err(Error::Validation(format!(
                "layout needs exactly 2 q'' qubits, got {}",
                self.qdprime.len()
            )));
        }
        if self.q.is_empty() {
            return Err(Error::Validation("layout has no input qubits".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for q in self.all() {
            if !seen.insert(q) {
                return Err(Error::OverlappingQubits(q));
            }
        }
        Ok(())
    }

    /// Input state: every q qubit in cos x|0> + sin x|1>, everything else |0>.
    pub fn input_state(&self, x: f64) -> Result<State> {
        let mut s = crate::statevector::new_state(self.num_qubits())?;
        for &q in &self.q {
            s = crate::statevector::prepare_psi_x(s, q, x)?;
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub num_qubits: usize,
    pub layout: RegisterLayout,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(layout: RegisterLayout) -> Self {
        Self {
            num_qubits: layout.num_qubits(),
            layout,
            gates: Vec::new(),
        }
    }

    pub fn with_gates(&self, gates: Vec<Gate>) -> Self {
        Self {
            num_qubits: self.num_qubits,
            layout: self.layout.clone(),
            gates,
        }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) {
        self.gates.extend(gates);
    }

    pub fn validate(&self) -> Result<()> {
        self.gates.iter().try_for_each(|g| g.validate(self.num_qubits))
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

pub fn run(circuit: &Circuit, initial: State) -> Result<State> {
    if initial.num_qubits() != circuit.num_qubits {
        return Err(Error::DimensionMismatch {
            expected: circuit.num_qubits,
            found: initial.num_qubits(),
        });
    }
    let mut state = initial;
    for g in &circuit.gates {
        state.apply(g)?;
    }
    Ok(state)
}

/// Gate counts by category. Controls are counted regardless of polarity.
/// `other` collects controlled H, X with two or more controls and controlled SWAP.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GateCensus {
    pub ry: usize,
    pub h: usize,
    pub x: usize,
    pub cry: usize,
    pub ccry: usize,
    pub cnot: usize,
    pub swap: usize,
    pub multi_controlled_ry: BTreeMap<usize, usize>,
    pub other: usize,
}

impl GateCensus {
    pub fn total(&self) -> usize {
        self.ry
            + self.h
            + self.x
            + self.cry
            + self.ccry
            + self.cnot
            + self.swap
            + self.multi_controlled_ry.values().sum::<usize>()
            + self.other
    }

    pub fn add(&mut self, gate: &Gate) {
        let k = gate.controls.len();
        match (gate.kind, k) {
            (GateKind::Ry(_), 0) => self.ry += 1,
            (GateKind::Ry(_), 1) => self.cry += 1,
            (GateKind::Ry(_), 2) => self.ccry += 1,
            (GateKind::Ry(_), k) => *self.multi_controlled_ry.entry(k).or_default() += 1,
            (GateKind::H, 0) => self.h += 1,
            (GateKind::X, 0) => self.x += 1,
            (GateKind::X, 1) => self.cnot += 1,
            (GateKind::Swap, 0) => self.swap += 1,
            _ => self.other += 1,
        }
    }
}

pub fn gate_census(circuit: &Circuit) -> GateCensus {
    let mut c = GateCensus::default();
    circuit.gates.iter().for_each(|g| c.add(g));
    c
}
