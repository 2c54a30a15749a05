use std::f64::consts::PI;

use crate::circuit::{Circuit, Control, Gate, GateKind, Polarity};
use crate::error::Result;

use super::un::{is_flip, un_gates, HeadMode, Placement, UnOptions};
use super::CompiledPlan;

/// Controls on q′ that select slot `label` (q′[0] is the most significant bit).
pub fn slot_label_controls(qprime: &[usize], label: usize) -> Vec<Control> {
    let m = qprime.len();
    qprime
        .iter()
        .enumerate()
        .map(|(i, &qubit)| Control {
            qubit,
            polarity: if (label >> (m - 1 - i)) & 1 == 1 {
                Polarity::One
            } else {
                Polarity::Zero
            },
        })
        .collect()
}

/// Full circuit: U_pre on q′, H on q″₁, then every chain controlled by its
/// slot label. Chains sit on the trailing input qubits so they end on q_N
/// without a SWAP. The residual label flips q_N with Ry(π) when q″₁ = 1,
/// which reads exactly ½; when even-power slots leave a constant D, it
/// instead swaps in q″₂ prepared to read ½ − D/γ₀. Slot-controlled flips are emitted as Ry(π): same
/// outcome probabilities, and the expansion passes only handle rotations.
pub fn assemble(plan: &CompiledPlan) -> Result<Circuit> {
    plan.validate()?;
    let layout = &plan.layout;
    let mut c = Circuit::new(layout.clone());
    c.extend(super::upre::upre_gates(&plan.padded_weights(), &layout.qprime)?);

    let h1 = layout.qdprime[0];
    let q_last = layout.last_q();
    if plan.has_residual() || plan.slots.iter().any(|s| s.n > 1) {
        c.push(Gate::h(h1));
    }

    let opts = UnOptions {
        head: HeadMode::Mirrored,
        placement: Placement::Trailing,
        skip_hadamards: true,
    };
    for (label, slot) in plan.slots.iter().enumerate() {
        let ctrls = slot_label_controls(&layout.qprime, label);
        for g in un_gates(slot, layout, opts)? {
            let g = if is_flip(&g) {
                Gate {
                    kind: GateKind::Ry(PI),
                    ..g
                }
            } else {
                g
            };
            c.push(g.with_controls(ctrls.iter().copied()));
        }
    }
    if plan.has_residual() {
        let ctrls = slot_label_controls(&layout.qprime, plan.slots.len());
        let p = plan.residual_readout();
        if p == 0.5 {
            c.push(Gate::ry(q_last, PI).with_controls(ctrls).ctrl(h1));
        } else {
            // Prepare q″₂ to read p and swap it onto q_N (flips as Ry(π)).
            let h2 = layout.qdprime[1];
            let flip = |t: usize, ctrl: usize| Gate::ry(t, PI).with_controls(ctrls.iter().copied()).ctrl(ctrl);
            c.push(Gate::ry(h2, 2.0 * p.sqrt().asin()).with_controls(ctrls.iter().copied()));
            c.extend([flip(h2, q_last), flip(q_last, h2), flip(h2, q_last)]);
        }
    }
    Ok(c)
}
