//! OpenQASM 2.0 export.
//!
//! Output layout:
//!
//! ```text
//! OPENQASM 2.0;
//! include "qelib1.inc";
//! qreg q[<num_qubits>];
//! ry(<angle>) q[<t>];
//! h q[<t>];
//! x q[<t>];
//! cx q[<c>],q[<t>];
//! cry(<angle>) q[<c>],q[<t>];
//! ```
//!
//! One gate per line, angles printed with 17 significant digits, qubit
//! indices are the global layout indices. `cry` comes from the standard
//! header. Only circuits already lowered to {Ry, H, X, CRy, CNOT} with
//! positive controls are accepted; run `passes::decompose_full` first.

use std::fmt::Write;

use super::{Circuit, Gate, GateKind, Polarity};
use crate::error::{Error, Result};

pub fn to_qasm(circuit: &Circuit) -> Result<String> {
    circuit.validate()?;
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(out, "qreg q[{}];", circuit.num_qubits).unwrap();
    for g in &circuit.gates {
        out.push_str(&gate_line(g)?);
        out.push('\n');
    }
    Ok(out)
}

fn gate_line(g: &Gate) -> Result<String> {
    if g.controls.iter().any(|c| c.polarity == Polarity::Zero) {
        return Err(Error::Unsupported(format!("on-zero control in {g:?}")));
    }
    let t = g.targets[0];
    let line = match (g.kind, g.controls.as_slice()) {
        (GateKind::Ry(a), []) => format!("ry({a:.16e}) q[{t}];"),
        (GateKind::H, []) => format!("h q[{t}];"),
        (GateKind::X, []) => format!("x q[{t}];"),
        (GateKind::X, [c]) => format!("cx q[{}],q[{t}];", c.qubit),
        (GateKind::Ry(a), [c]) => format!("cry({a:.16e}) q[{}],q[{t}];", c.qubit),
        _ => return Err(Error::Unsupported(format!("{g:?}"))),
    };
    Ok(line)
}
