//! Rewriting passes over the gate IR.
//!
//! Every pass preserves the circuit's unitary action exactly (no relative
//! phases leak out of a rewritten gate) and is idempotent.
//!
//! Multi-controlled rotations are expanded without ancillas:
//!
//! * k = 3: `CRy(θ/2)[c3] · CCRy(π)[c1 c2 → c3] · CRy(−θ/2)[c3] · CCRy(−π) · CCRy(θ/2)[c1 c2]`, 5 gates.
//! * k ≥ 4: controls split into halves A (first ⌈k/2⌉) and B. With X^A the
//!   multi-controlled X on A → target, the rotation is
//!   `X^B Ry(−θ/4) X^A Ry(θ/4) X^B Ry(−θ/4) X^A Ry(θ/4)`. Each X^A borrows B
//!   as dirty work qubits (and vice versa) through a Toffoli ladder whose
//!   inner Toffolis are CCRy(±π) (relative phases cancel pairwise) and whose
//!   outer ones are exact 6-gate Toffolis.
//!
//! The expansion of a k-controlled Ry has at most 8k + 12 gates, so the
//! bound c·k² holds with c = 2 for every k ≥ 3.

use std::f64::consts::PI;

use super::{Circuit, Control, Gate, GateKind, Polarity};

/// Documented constant `c` in the bound `expansion_len(k) <= c * k^2`.
pub const MULTICONTROL_SIZE_CONSTANT: usize = 2;

fn map_gates(circuit: &Circuit, mut f: impl FnMut(&Gate, &mut Vec<Gate>)) -> Circuit {
    let mut out = Vec::with_capacity(circuit.gates.len());
    for g in &circuit.gates {
        f(g, &mut out);
    }
    circuit.with_gates(out)
}

fn zero_controls(gate: &Gate) -> Vec<usize> {
    gate.controls
        .iter()
        .filter(|c| c.polarity == Polarity::Zero)
        .map(|c| c.qubit)
        .collect()
}

fn positive(gate: &Gate) -> Gate {
    let mut g = gate.clone();
    for c in &mut g.controls {
        c.polarity = Polarity::One;
    }
    g
}

/// Wrap `body` (built for all-positive controls) in X gates on the
/// on-zero controls of `gate`.
fn x_conjugated(gate: &Gate, body: Vec<Gate>, out: &mut Vec<Gate>) {
    let zeros = zero_controls(gate);
    out.extend(zeros.iter().map(|&q| Gate::x(q)));
    out.extend(body);
    out.extend(zeros.iter().map(|&q| Gate::x(q)));
}

/// Replace on-zero controls with X conjugation.
pub fn lower_polarity(circuit: &Circuit) -> Circuit {
    map_gates(circuit, |g, out| {
        if zero_controls(g).is_empty() {
            out.push(g.clone());
        } else {
            x_conjugated(g, vec![positive(g)], out);
        }
    })
}

fn ccry_body(theta: f64, a: usize, b: usize, t: usize) -> Vec<Gate> {
    vec![
        Gate::ry(t, theta / 2.0).ctrl(b),
        Gate::cnot(a, b),
        Gate::ry(t, -theta / 2.0).ctrl(b),
        Gate::cnot(a, b),
        Gate::ry(t, theta / 2.0).ctrl(a),
    ]
}

/// Replace every two-control Ry with 2 CNOT + 3 CRy.
pub fn decompose_ccry(circuit: &Circuit) -> Circuit {
    map_gates(circuit, |g, out| match (g.kind, g.controls.len()) {
        (GateKind::Ry(theta), 2) => {
            let body = ccry_body(theta, g.controls[0].qubit, g.controls[1].qubit, g.target());
            x_conjugated(g, body, out);
        }
        _ => out.push(g.clone()),
    })
}

/// Replace Ry gates with three or more controls by gates with at most two.
pub fn expand_multicontrol(circuit: &Circuit) -> Circuit {
    map_gates(circuit, |g, out| match g.kind {
        GateKind::Ry(theta) if g.controls.len() >= 3 => {
            let ctrls: Vec<usize> = g.controls.iter().map(|c| c.qubit).collect();
            x_conjugated(g, mcry(theta, &ctrls, g.target()), out);
        }
        _ => out.push(g.clone()),
    })
}

/// Replace uncontrolled SWAP with three CNOTs.
pub fn decompose_swap(circuit: &Circuit) -> Circuit {
    map_gates(circuit, |g, out| {
        if g.kind == GateKind::Swap && g.controls.is_empty() {
            let (a, b) = (g.targets[0], g.targets[1]);
            out.extend([Gate::cnot(a, b), Gate::cnot(b, a), Gate::cnot(a, b)]);
        } else {
            out.push(g.clone());
        }
    })
}

/// Lower to {Ry, H, X, CRy, CNOT} with positive controls only (for circuits
/// whose H and SWAP gates are uncontrolled).
pub fn decompose_full(circuit: &Circuit) -> Circuit {
    let c = expand_multicontrol(circuit);
    let c = decompose_ccry(&c);
    let c = lower_polarity(&c);
    decompose_swap(&c)
}

fn pos(qubits: &[usize]) -> impl Iterator<Item = Control> + '_ {
    qubits.iter().map(|&qubit| Control {
        qubit,
        polarity: Polarity::One,
    })
}

/// Ry(theta) on `t` controlled (positively) by every qubit of `ctrls`.
pub fn mcry(theta: f64, ctrls: &[usize], t: usize) -> Vec<Gate> {
    match ctrls.len() {
        0..=2 => vec![Gate::ry(t, theta).with_controls(pos(ctrls))],
        3 => {
            let (c1, c2, c3) = (ctrls[0], ctrls[1], ctrls[2]);
            vec![
                Gate::ry(t, theta / 2.0).ctrl(c3),
                Gate::ry(c3, PI).ctrl(c1).ctrl(c2),
                Gate::ry(t, -theta / 2.0).ctrl(c3),
                Gate::ry(c3, -PI).ctrl(c1).ctrl(c2),
                Gate::ry(t, theta / 2.0).ctrl(c1).ctrl(c2),
            ]
        }
        k => {
            let (a, b) = ctrls.split_at(k.div_ceil(2));
            let xa = mcx(a, t, b);
            let xb = mcx(b, t, a);
            let q = theta / 4.0;
            let mut out = Vec::new();
            for _ in 0..2 {
                out.extend(xb.iter().cloned());
                out.push(Gate::ry(t, -q));
                out.extend(xa.iter().cloned());
                out.push(Gate::ry(t, q));
            }
            out
        }
    }
}

/// Exact Toffoli (a, b → y) that borrows `d` in an arbitrary state.
fn toffoli(a: usize, b: usize, y: usize, d: usize) -> Vec<Gate> {
    vec![
        Gate::ry(d, PI).ctrl(y),
        Gate::ry(y, PI).ctrl(a).ctrl(b),
        Gate::ry(d, -PI).ctrl(y),
        Gate::ry(y, -PI).ctrl(a).ctrl(b),
        Gate::ry(d, PI).ctrl(a).ctrl(b),
        Gate::ry(y, PI).ctrl(a).ctrl(b),
    ]
}

/// Multi-controlled X on `y` using `pool` as dirty work qubits. Requires
/// `pool.len() >= ctrls.len() - 2` and a nonempty pool for two controls.
pub fn mcx(ctrls: &[usize], y: usize, pool: &[usize]) -> Vec<Gate> {
    match ctrls.len() {
        0 => vec![Gate::x(y)],
        1 => vec![Gate::cnot(ctrls[0], y)],
        2 => toffoli(ctrls[0], ctrls[1], y, pool[0]),
        j => {
            let xs = ctrls;
            let anc = &pool[..j - 2];
            let rel = |a: usize, b: usize, t: usize, sign: f64| Gate::ry(t, sign * PI).ctrl(a).ctrl(b);
            let top = toffoli(xs[j - 1], anc[j - 3], y, xs[0]);
            let down: Vec<(usize, usize, usize)> =
                (2..=j - 2).rev().map(|i| (xs[i], anc[i - 2], anc[i - 1])).collect();
            let mid = (xs[0], xs[1], anc[0]);

            let mut out = Vec::new();
            for mid_sign in [1.0, -1.0] {
                out.extend(top.iter().cloned());
                out.extend(down.iter().map(|&(a, b, t)| rel(a, b, t, 1.0)));
                out.push(rel(mid.0, mid.1, mid.2, mid_sign));
                out.extend(down.iter().rev().map(|&(a, b, t)| rel(a, b, t, -1.0)));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{run, RegisterLayout};
    use crate::statevector::State;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bare(n: usize) -> Circuit {
        // Layout only fixes the qubit count here.
        Circuit::new(RegisterLayout {
            qprime: vec![],
            qdprime: vec![0, 1],
            q: (2..n.max(3)).collect(),
            extra: vec![],
        })
    }

    fn random_state(n: usize, rng: &mut ChaCha8Rng) -> State {
        let mut v: Vec<Complex64> = (0..1 << n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|a| *a /= norm);
        State::from_amplitudes(v).unwrap()
    }

    fn max_diff(a: &State, b: &State) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    fn assert_equivalent(a: &Circuit, b: &Circuit, trials: usize, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let s = random_state(a.num_qubits, &mut rng);
            let d = max_diff(&run(a, s.clone()).unwrap(), &run(b, s).unwrap());
            assert!(d < 1e-12, "difference {d}");
        }
    }

    #[test]
    fn ccry_decomposition() {
        let mut c = bare(3);
        c.push(Gate::ry(2, 1.234).ctrl(0).ctrl0(1));
        let d = decompose_ccry(&c);
        assert_eq!(d.len(), 5 + 2);
        assert_equivalent(&c, &d, 20, 1);

        let mut c = bare(3);
        c.push(Gate::ry(0, 0.77).ctrl(1).ctrl(2));
        let d = decompose_ccry(&c);
        let k = crate::circuit::gate_census(&d);
        assert_eq!((k.cnot, k.cry, k.ccry), (2, 3, 0));
        assert_equivalent(&c, &d, 20, 2);
    }

    #[test]
    fn ccry_zero_angle_is_identity() {
        let mut c = bare(3);
        c.push(Gate::ry(2, 0.0).ctrl(0).ctrl(1));
        assert_equivalent(&bare(3), &decompose_ccry(&c), 20, 3);
    }

    #[test]
    fn single_control_untouched() {
        let mut c = bare(3);
        c.extend([Gate::ry(2, 0.3).ctrl(0), Gate::cnot(1, 0)]);
        assert_eq!(expand_multicontrol(&c), c);
        assert_eq!(decompose_ccry(&c), c);
    }

    #[test]
    fn toffoli_exact() {
        let mut c = bare(4);
        c.extend(toffoli(0, 1, 2, 3));
        let mut t = bare(4);
        t.push(Gate::x(2).ctrl(0).ctrl(1));
        assert_equivalent(&c, &t, 20, 4);
    }

    #[test]
    fn mcx_ladder_exact() {
        for j in 3..=5 {
            let n = 2 * j - 1;
            let ctrls: Vec<usize> = (0..j).collect();
            let pool: Vec<usize> = (j..2 * j - 2).collect();
            let mut c = bare(n);
            c.extend(mcx(&ctrls, 2 * j - 2, &pool));
            let mut t = bare(n);
            t.push(Gate::x(2 * j - 2).with_controls(pos(&ctrls)));
            assert_equivalent(&c, &t, 10, 5 + j as u64);
        }
    }

    #[test]
    fn multicontrol_exact_and_sized() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for k in 3..=6 {
            let theta = rng.gen_range(-3.0..3.0);
            let mut c = bare(k + 1);
            let mut g = Gate::ry(k, theta);
            for q in 0..k {
                g = g.with_control(q, if q % 2 == 0 { Polarity::One } else { Polarity::Zero });
            }
            c.push(g);
            let e = expand_multicontrol(&c);
            assert_equivalent(&c, &e, 10, 10 + k as u64);
            let k_cen = crate::circuit::gate_census(&e);
            assert!(k_cen.multi_controlled_ry.is_empty() && k_cen.other == 0);
            let body = mcry(theta, &(0..k).collect::<Vec<_>>(), k).len();
            assert!(body <= MULTICONTROL_SIZE_CONSTANT * k * k, "k={k} size={body}");
        }
    }

    #[test]
    fn full_decomposition_gate_set() {
        let mut c = bare(6);
        c.extend([
            Gate::ry(5, 0.4).ctrl(0).ctrl0(1).ctrl(2).ctrl0(3),
            Gate::swap(1, 4),
            Gate::ry(2, -0.9).ctrl0(5),
            Gate::h(3),
        ]);
        let d = decompose_full(&c);
        assert_equivalent(&c, &d, 10, 20);
        for g in &d.gates {
            assert!(g.controls.len() <= 1);
            assert!(g.controls.iter().all(|c| c.polarity == Polarity::One));
            assert!(g.kind != GateKind::Swap);
        }
    }

    #[test]
    fn passes_idempotent() {
        let mut c = bare(5);
        c.extend([
            Gate::ry(4, 0.4).ctrl(0).ctrl0(1).ctrl(2),
            Gate::ry(3, 0.2).ctrl0(0).ctrl(1),
            Gate::swap(0, 2),
        ]);
        for pass in [lower_polarity, decompose_ccry, expand_multicontrol, decompose_swap, decompose_full] {
            let once = pass(&c);
            assert_eq!(pass(&once), once);
        }
    }

    #[test]
    fn inverse_undoes() {
        let mut c = bare(4);
        c.extend([Gate::h(0), Gate::ry(1, 0.3).ctrl(0), Gate::swap(2, 3), Gate::ry(3, 1.0).ctrl0(1).ctrl(2)]);
        let mut both = c.clone();
        both.extend(crate::circuit::inverse(&c.gates));
        assert_equivalent(&both, &bare(4), 10, 30);
    }
}
