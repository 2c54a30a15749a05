//! Chain circuits U_n.
//!
//! For n ≥ 2 the chain is: Ry(θ₁) on the head qubit, four two-control
//! rotations on the second qubit (controls q″₁ and either the head qubit or
//! q″₂, depending on [`HeadMode`]), one pair of single-control rotations per
//! later link (θ_k on control |0>, θ′_k on control |1>), a q″₁-controlled
//! flip of the last chain qubit, and a SWAP to q_N when the chain does not
//! end there.
//!
//! Reading q_N = 1 on input |ψ(x)>^⊗N gives
//! ½ + h·s·cos(2x − 2w₁¹)·∏_{k≥2} |sin(v₁ᵏ − w₁ᵏ)| cos(2x − β_k),
//! with h = ½ for `Mirrored`, h = ¼ for `PlusReference`, and s the slot sign.
//!
//! Bare gate counts for n > 2 (Mirrored, leading placement):
//! 1 H, 1 Ry, 4 CCRy, 2n − 4 CRy, 1 CNOT, plus 1 SWAP when n < N.
//! PlusReference adds one H. n = 2 has 4 CCRy and no CRy; n = 1 is one Ry.

use std::f64::consts::PI;

use crate::circuit::{Circuit, Gate, GateKind, Polarity, RegisterLayout};
use crate::error::{Error, Result};

use super::slot::SlotSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeadMode {
    /// q″₁ selects between the link-2 rotation pair and its mirror image;
    /// the flip on the q″₁ = 1 branch turns the mirror into a copy.
    #[default]
    Mirrored,
    /// q″₁ = 1 branch replaces the head qubit by the reference qubit q″₂ in |+>.
    PlusReference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Placement {
    /// Chain on q₁..q_n followed by SWAP(q_n, q_N).
    #[default]
    Leading,
    /// Chain on q_{N−n+1}..q_N, no SWAP.
    Trailing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct UnOptions {
    pub head: HeadMode,
    pub placement: Placement,
    /// Emit the Hadamards on q″ (off when the caller shares them).
    pub skip_hadamards: bool,
}

pub(crate) fn check_slot(slot: &SlotSpec) -> Result<()> {
    if slot.n == 0 || slot.links.len() != slot.n || slot.beta.len() != slot.n {
        return Err(Error::Validation(format!(
            "slot n={} has {} links and {} phases",
            slot.n,
            slot.links.len(),
            slot.beta.len()
        )));
    }
    if slot.sign != 1 && slot.sign != -1 {
        return Err(Error::Validation(format!("slot sign must be ±1, got {}", slot.sign)));
    }
    Ok(())
}

pub fn un_gates(slot: &SlotSpec, layout: &RegisterLayout, opts: UnOptions) -> Result<Vec<Gate>> {
    check_slot(slot)?;
    let big_n = layout.q.len();
    if slot.n > big_n {
        return Err(Error::LayoutTooSmall {
            needed: slot.n,
            available: big_n,
        });
    }
    let n = slot.n;
    let q_last = layout.last_q();
    let links = &slot.links;

    if n == 1 {
        let shift = if slot.sign < 0 { -PI } else { 0.0 };
        return Ok(vec![Gate::ry(q_last, links[0].theta + shift)]);
    }

    let chain: &[usize] = match opts.placement {
        Placement::Leading => &layout.q[..n],
        Placement::Trailing => &layout.q[big_n - n..],
    };
    let (h1, h2) = (layout.qdprime[0], layout.qdprime[1]);
    let mut g = Vec::with_capacity(2 * n + 5);

    if !opts.skip_hadamards {
        g.push(Gate::h(h1));
        if opts.head == HeadMode::PlusReference {
            g.push(Gate::h(h2));
        }
    }
    g.push(Gate::ry(chain[0], links[0].theta));

    let (t, tp) = (links[1].theta, links[1].theta_prime);
    let second = chain[1];
    g.push(Gate::ry(second, t).ctrl0(h1).ctrl0(chain[0]));
    g.push(Gate::ry(second, tp).ctrl0(h1).ctrl(chain[0]));
    match opts.head {
        HeadMode::Mirrored => {
            g.push(Gate::ry(second, tp).ctrl(h1).ctrl0(chain[0]));
            g.push(Gate::ry(second, t).ctrl(h1).ctrl(chain[0]));
        }
        HeadMode::PlusReference => {
            g.push(Gate::ry(second, t).ctrl(h1).ctrl0(h2));
            g.push(Gate::ry(second, tp).ctrl(h1).ctrl(h2));
        }
    }

    for k in 2..n {
        g.push(Gate::ry(chain[k], links[k].theta).ctrl0(chain[k - 1]));
        g.push(Gate::ry(chain[k], links[k].theta_prime).ctrl(chain[k - 1]));
    }

    let flip_on = if slot.sign > 0 { Polarity::One } else { Polarity::Zero };
    g.push(Gate::x(chain[n - 1]).with_control(h1, flip_on));

    if chain[n - 1] != q_last {
        g.push(Gate::swap(chain[n - 1], q_last));
    }
    Ok(g)
}

/// Canonical U_n (mirrored head, leading placement).
pub fn build_un(slot: &SlotSpec, layout: &RegisterLayout) -> Result<Circuit> {
    build_un_with(slot, layout, UnOptions::default())
}

pub fn build_un_with(slot: &SlotSpec, layout: &RegisterLayout, opts: UnOptions) -> Result<Circuit> {
    layout.validate()?;
    let mut c = Circuit::new(layout.clone());
    c.extend(un_gates(slot, layout, opts)?);
    Ok(c)
}

/// Amplitude factor h of the head construction.
pub fn head_factor(mode: HeadMode) -> f64 {
    match mode {
        HeadMode::Mirrored => 0.5,
        HeadMode::PlusReference => 0.25,
    }
}

pub(crate) fn is_flip(g: &Gate) -> bool {
    g.kind == GateKind::X && g.controls.len() == 1
}
