//! Acceptance checks A1–A9. Runs without the libtest harness so every
//! PASS/FAIL line reaches stdout; exits nonzero if any check fails.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fourier_circuit::circuit::{gate_census, passes, run, Circuit, Gate, RegisterLayout};
use fourier_circuit::compiler::slot::{chain_alpha, realized_beta};
use fourier_circuit::compiler::{
    assemble, build_un, build_upre, compile_plan, fourier_from_samples, CompileOptions, FourierSeries, LinkAngles,
    SlotSpec,
};
use fourier_circuit::oracle::{chain_closed_form, chain_recurrence, eval_target, plan_harmonics_over_c};
use fourier_circuit::sampler::sample_shots;
use fourier_circuit::statevector::{new_state, prob_of_outcome};
use fourier_circuit::superposition::{
    build_superposition_circuit, p0_theory, reference_slot, simulate_p0, slot_kappa, QUOTED_KAPPA, REFERENCE_BETA,
};

const A1_TOL: f64 = 1e-9;
const A1_POINTS: usize = 64;
const A2_QUOTED_TOL: f64 = 1e-3;
const A2_INTERNAL_TOL: f64 = 1e-10;
const A3_TOL: f64 = 1e-12;
const A4_TOL: f64 = 1e-12;
const A5_TOL: f64 = 1e-10;
const A6_TOL: f64 = 1e-10;
const A6_KAPPA_TOL: f64 = 1e-3;
const A7_TOL: f64 = 0.02;
const A7_SHOTS: u64 = 8192;
const A8_SLACK: f64 = 2.0;
const A9_TOL: f64 = 2e-3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn p1(c: &Circuit, x: f64) -> f64 {
    let s = run(c, c.layout.input_state(x).unwrap()).unwrap();
    prob_of_outcome(&s, c.layout.last_q(), true).unwrap()
}

/// Distance between two angles on the circle.
fn angle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

fn a1() -> Outcome {
    let start = Instant::now();
    let series = FourierSeries::square_wave(7);
    let plan = compile_plan(&series, CompileOptions::default()).unwrap();
    let c = assemble(&plan).unwrap();
    let worst = (0..A1_POINTS)
        .map(|i| {
            let x = PI * i as f64 / A1_POINTS as f64;
            (p1(&c, x) - (plan.c * eval_target(&series, x) + 0.5)).abs()
        })
        .fold(0.0, f64::max);
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= A1_TOL && secs < 5.0,
        format!("{} qubits, max err {worst:.2e} (tol {A1_TOL:.0e}), {secs:.2}s", c.num_qubits),
    )
}

fn a2() -> Outcome {
    let quoted = [(1, -0.8211, 4.8812), (3, 18.9339, 0.2384), (5, -15.6030, 0.0046), (7, -9.1429, 0.6732)];
    let plan = compile_plan(&FourierSeries::square_wave(7), CompileOptions::default()).unwrap();
    let mut pair_err: f64 = 0.0;
    let mut matched = plan.slots.len() == quoted.len();
    for (&(n, amp, phase), s) in quoted.iter().zip(&plan.slots) {
        matched &= s.n == n;
        let got = s.sign_f64() * s.gamma * s.alpha / plan.c;
        pair_err = pair_err.max((got - amp).abs()).max(angle_dist(s.beta[0], phase));
    }
    let h = plan_harmonics_over_c(&plan);
    let mut quoted_err: f64 = 0.0;
    let mut internal_err: f64 = h[0].norm();
    for (m, z) in h.iter().enumerate().skip(1) {
        let want = if m % 2 == 1 {
            Complex64::from_polar(1.0 / m as f64, -PI / 2.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        quoted_err = quoted_err.max((z - want).norm());
        internal_err = internal_err.max((z - want).norm());
    }
    outcome(
        matched && pair_err <= A2_QUOTED_TOL && quoted_err <= A2_QUOTED_TOL && internal_err <= A2_INTERNAL_TOL,
        format!(
            "slot pairs max err {pair_err:.2e}, harmonics max err {quoted_err:.2e} (tol {A2_QUOTED_TOL:.0e}), internal {internal_err:.2e} (tol {A2_INTERNAL_TOL:.0e})"
        ),
    )
}

fn a3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for trial in 0..100 {
        let m = 1 + trial % 4;
        let mut g: Vec<f64> = (0..1 << m)
            .map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen::<f64>() })
            .collect();
        if g.iter().all(|&v| v == 0.0) {
            g[0] = 1.0;
        }
        let total: f64 = g.iter().sum();
        g.iter_mut().for_each(|v| *v /= total);
        let c = build_upre(&g).unwrap();
        let s = run(&c, new_state(m).unwrap()).unwrap();
        for (label, &gamma) in g.iter().enumerate() {
            // q′[0] (qubit 0) holds the label's most significant bit.
            let index: usize = (0..m).map(|i| ((label >> (m - 1 - i)) & 1) << i).sum();
            worst = worst.max((s.amplitudes()[index] - Complex64::new(gamma.sqrt(), 0.0)).norm());
        }
    }
    outcome(worst <= A3_TOL, format!("100 weight vectors, max amplitude err {worst:.2e} (tol {A3_TOL:.0e})"))
}

/// Chain on qubits 0..=n: qubit 0 is prepared to read 1 with probability
/// `head`, qubit k ≥ 1 holds the input and is rotated by θ (θ′) when
/// qubit k − 1 is 0 (1).
fn chain_statevector(links: &[(f64, f64)], x: f64, head: f64) -> f64 {
    let n = links.len();
    let mut c = Circuit::new(RegisterLayout {
        qprime: Vec::new(),
        qdprime: Vec::new(),
        q: (0..=n).collect(),
        extra: Vec::new(),
    });
    c.push(Gate::ry(0, 2.0 * head.sqrt().asin() - 2.0 * x));
    for (k, &(w, v)) in links.iter().enumerate() {
        let t = k + 1;
        c.push(Gate::ry(t, PI - 2.0 * w).ctrl0(k));
        c.push(Gate::ry(t, PI - 2.0 * v).ctrl(k));
    }
    p1(&c, x)
}

fn a4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let links: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI))).collect();
        let head = rng.gen::<f64>();
        for _ in 0..20 {
            let x = rng.gen_range(-PI..PI);
            let r = chain_recurrence(&links, x, head).last();
            let cf = chain_closed_form(&links, x, head);
            let sv = chain_statevector(&links, x, head);
            worst = worst.max((r - cf).abs()).max((r - sv).abs());
        }
    }
    outcome(worst <= A4_TOL, format!("100 chains x 20 points, max err {worst:.2e} (tol {A4_TOL:.0e})"))
}

fn a5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.gen_range(1..=6);
        let big_n = rng.gen_range(n..=6);
        let links: Vec<LinkAngles> = (0..n)
            .map(|_| LinkAngles {
                theta: rng.gen_range(-2.0 * PI..2.0 * PI),
                theta_prime: rng.gen_range(-2.0 * PI..2.0 * PI),
            })
            .collect();
        let sign: i8 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let slot = SlotSpec {
            n,
            gamma: 1.0,
            sign,
            beta: realized_beta(&links),
            alpha: chain_alpha(&links),
            links: links.clone(),
        };
        let c = build_un(&slot, &RegisterLayout::standard(0, big_n)).unwrap();
        for i in 0..32 {
            let x = PI * i as f64 / 32.0;
            let mut want = 0.5 * (2.0 * x - 2.0 * links[0].w1()).cos();
            for l in &links[1..] {
                let (w, v) = (l.w1(), l.v1());
                let beta = ((2.0 * v).sin() - (2.0 * w).sin()).atan2((2.0 * v).cos() - (2.0 * w).cos());
                want *= (v - w).sin().abs() * (2.0 * x - beta).cos();
            }
            let want = 0.5 + f64::from(sign) * want;
            worst = worst.max((p1(&c, x) - want).abs());
        }
    }
    outcome(worst <= A5_TOL, format!("50 builds x 32 points, max err {worst:.2e} (tol {A5_TOL:.0e})"))
}

fn a6() -> Outcome {
    let slot = reference_slot();
    let kappa = slot_kappa(&slot);
    let (x0, x1) = (3.4, 0.2);
    let mut worst: f64 = 0.0;
    for i in 0..32 {
        let th = 2.0 * PI * i as f64 / 31.0;
        let sim = simulate_p0(&build_superposition_circuit(x0, x1, th, &slot).unwrap()).unwrap();
        worst = worst.max((sim - p0_theory(x0, x1, th, kappa, REFERENCE_BETA)).abs());
    }
    for i in 0..32 {
        let x1 = PI * i as f64 / 31.0;
        let sim = simulate_p0(&build_superposition_circuit(x0, x1, PI, &slot).unwrap()).unwrap();
        worst = worst.max((sim - p0_theory(x0, x1, PI, kappa, REFERENCE_BETA)).abs());
    }
    let kappa_err = (kappa - QUOTED_KAPPA).abs();
    outcome(
        worst <= A6_TOL && kappa_err <= A6_KAPPA_TOL,
        format!(
            "max err {worst:.2e} (tol {A6_TOL:.0e}), kappa {kappa:.5} vs {QUOTED_KAPPA} (err {kappa_err:.1e}, tol {A6_KAPPA_TOL:.0e})"
        ),
    )
}

fn a7() -> Outcome {
    let plan = compile_plan(&FourierSeries::square_wave(7), CompileOptions::default()).unwrap();
    let c = assemble(&plan).unwrap();
    let q = c.layout.last_q();
    let mut worst: f64 = 0.0;
    let mut reproducible = true;
    for x in [0.1, 0.6, 1.2, 1.9, 2.7] {
        for seed in 0..10 {
            let r = sample_shots(&c, x, q, A7_SHOTS, seed).unwrap();
            reproducible &= r == sample_shots(&c, x, q, A7_SHOTS, seed).unwrap();
            worst = worst.max((r.p_hat() - r.p_exact).abs());
        }
    }
    outcome(
        worst <= A7_TOL && reproducible,
        format!("50 records, max |p_hat - p| {worst:.4} (tol {A7_TOL}), reproducible {reproducible}"),
    )
}

fn ceil_log2(n: usize) -> usize {
    (n - 1).ilog2() as usize + 1
}

fn a8() -> Outcome {
    let mut literal = true;
    let mut counts = Vec::new();
    for n in 3..=8 {
        let slot = SlotSpec::canonical(1.0, 1, vec![0.4; n]);
        let census = gate_census(&build_un(&slot, &RegisterLayout::standard(0, 8)).unwrap());
        literal &= census.ccry == 4 && census.cry == 4 * n - 8 && census.swap == usize::from(n < 8);
        counts.push(format!("n={n}: CCRy {} CRy {} (4n-8 = {})", census.ccry, census.cry, 4 * n - 8));
    }

    let total = |big_n: usize| {
        let terms: Vec<(usize, f64, f64)> = (1..=big_n).map(|n| (n, 1.0 / n as f64, 0.3 * n as f64)).collect();
        let plan = compile_plan(&FourierSeries::from_terms(&terms).unwrap(), CompileOptions::default()).unwrap();
        gate_census(&passes::decompose_full(&assemble(&plan).unwrap())).total()
    };
    let scale = |n: usize| (n * n * ceil_log2(n) * ceil_log2(n)) as f64;
    let base = total(4);
    let c = base as f64 / scale(4);
    let mut growth = true;
    let mut fit = Vec::new();
    for big_n in [4, 8, 16] {
        let t = if big_n == 4 { base } else { total(big_n) };
        growth &= t as f64 <= A8_SLACK * c * scale(big_n);
        fit.push(format!("N={big_n}: {t} <= {:.0}", A8_SLACK * c * scale(big_n)));
    }
    outcome(
        literal && growth,
        format!(
            "literal per-category counts {}; growth fit {}; [{}]; [{}]",
            if literal { "ok" } else { "differ" },
            if growth { "ok" } else { "exceeded" },
            counts.join(", "),
            fit.join(", ")
        ),
    )
}

fn a9() -> Outcome {
    let got = fourier_from_samples(|x| (2.0 * x).sin().signum(), -PI / 4.0, PI / 4.0, 7).unwrap();
    let mut worst: f64 = 0.0;
    let mut detail = Vec::new();
    for n in 1..=7 {
        let z = got
            .terms
            .iter()
            .find(|t| t.n == n)
            .map_or(Complex64::new(0.0, 0.0), |t| Complex64::from_polar(t.a, t.b));
        let want = if n % 2 == 1 {
            Complex64::from_polar(1.0 / n as f64, -PI / 2.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        worst = worst.max((z - want).norm());
        if n % 2 == 1 {
            detail.push(format!("a{n} = {:.4}", z.norm()));
        }
    }
    outcome(
        worst <= A9_TOL,
        format!("max err vs a_n = 1/n, b_n = -pi/2: {worst:.3e} (tol {A9_TOL:.0e}); {}", detail.join(", ")),
    )
}

type Check = (&'static str, fn() -> Outcome);

fn main() {
    // Ignore libtest flags such as --nocapture or test filters.
    let checks: [Check; 9] =
        [("A1", a1), ("A2", a2), ("A3", a3), ("A4", a4), ("A5", a5), ("A6", a6), ("A7", a7), ("A8", a8), ("A9", a9)];
    let mut failed = Vec::new();
    for (name, check) in checks {
        let o = check();
        println!("{name} {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(name);
        }
    }
    if !failed.is_empty() {
        println!("acceptance: failing criteria {}", failed.join(", "));
        std::process::exit(1);
    }
    println!("acceptance: all criteria pass");
}
