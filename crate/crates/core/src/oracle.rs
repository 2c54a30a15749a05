//! Closed-form references for checking circuits, computed without building
//! or simulating any gates.
//!
//! All `x` arguments are circuit input angles (the qubit factor is
//! cos x|0> + sin x|1>); for a series of period π this is the series variable.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::compiler::{CompiledPlan, FourierSeries, FourierTerm, LinkAngles, SlotSpec};
use crate::error::Result;

/// F(x) = Σ a_n cos(2π n x / T + b_n).
pub fn eval_target(series: &FourierSeries, x: f64) -> f64 {
    let w = 2.0 * PI / series.period;
    series.terms.iter().map(|t| t.a * (w * t.n as f64 * x + t.b).cos()).sum()
}

fn cos_product(beta: &[f64], x: f64) -> f64 {
    beta.iter().map(|b| (2.0 * x - b).cos()).product()
}

/// sign·α·∏cos(2x − β_k) + ½.
pub fn un_contribution(slot: &SlotSpec, x: f64) -> f64 {
    slot.sign_f64() * slot.alpha * cos_product(&slot.beta, x) + 0.5
}

/// Probability that q_N reads 1 for the assembled plan: the γ-weighted mix
/// of every slot's readout plus the residual branch. The residual branch
/// reads ½ − D/γ₀ where D is the constant part of the slot signal, found
/// here by averaging over one period.
pub fn eval_plan_probability(plan: &CompiledPlan, x: f64) -> f64 {
    let signal = |x: f64| -> f64 {
        plan.slots
            .iter()
            .map(|s| s.gamma * (un_contribution(s, x) - 0.5))
            .sum()
    };
    let slot_mass: f64 = plan.slots.iter().map(|s| s.gamma).sum();
    let mut p = signal(x) + 0.5 * slot_mass;
    if plan.residual_weight > 0.0 {
        let degree = plan.slots.iter().map(|s| s.n).max().unwrap_or(0);
        let k = 4 * (degree + 1);
        let dc = (0..k).map(|i| signal(PI * i as f64 / k as f64)).sum::<f64>() / k as f64;
        let readout = if plan.has_residual() {
            (0.5 - dc / plan.residual_weight).clamp(0.0, 1.0)
        } else {
            0.5
        };
        p += plan.residual_weight * readout;
    }
    p
}

/// ½ + sign·h·cos(2x − 2w₁¹)·∏_{k≥2} B_k(x), with B_k the raw cosine
/// difference ½[cos(2x − 2v₁ᵏ) − cos(2x − 2w₁ᵏ)] and h the head factor.
pub fn output_un_probability(links: &[LinkAngles], sign: f64, head: f64, x: f64) -> f64 {
    let first = (2.0 * x - 2.0 * links[0].w1()).cos();
    let rest: f64 = links[1..].iter().map(|l| b_raw(l.w1(), l.v1(), x)).product();
    0.5 + sign * head * first * rest
}

pub fn a_term(w: f64, x: f64) -> f64 {
    0.5 + 0.5 * (2.0 * x - 2.0 * w).cos()
}

pub fn b_raw(w: f64, v: f64, x: f64) -> f64 {
    0.5 * ((2.0 * x - 2.0 * v).cos() - (2.0 * x - 2.0 * w).cos())
}

/// |sin(v − w)|·cos(2x − β) with β from the arctan2 form.
pub fn b_factorized(w: f64, v: f64, x: f64) -> f64 {
    let beta = ((2.0 * v).sin() - (2.0 * w).sin()).atan2((2.0 * v).cos() - (2.0 * w).cos());
    (v - w).sin().abs() * (2.0 * x - beta).cos()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainTrace {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    /// P₁ after each link; `p1[0]` is the initial value.
    pub p1: Vec<f64>,
}

impl ChainTrace {
    pub fn last(&self) -> f64 {
        *self.p1.last().expect("trace holds the initial value")
    }
}

/// P₁ᵏ = A_k + B_k·P₁ᵏ⁻¹ over links given as (w₁, v₁).
pub fn chain_recurrence(links: &[(f64, f64)], x: f64, head: f64) -> ChainTrace {
    let mut t = ChainTrace {
        a: Vec::with_capacity(links.len()),
        b: Vec::with_capacity(links.len()),
        p1: vec![head],
    };
    for &(w, v) in links {
        let (a, b) = (a_term(w, x), b_raw(w, v, x));
        let next = a + b * t.last();
        t.a.push(a);
        t.b.push(b);
        t.p1.push(next);
    }
    t
}

/// Σ_j A_j ∏_{k>j} B_k + P₁⁰·∏_k B_k.
pub fn chain_closed_form(links: &[(f64, f64)], x: f64, head: f64) -> f64 {
    let n = links.len();
    let a: Vec<f64> = links.iter().map(|&(w, _)| a_term(w, x)).collect();
    let b: Vec<f64> = links.iter().map(|&(w, v)| b_raw(w, v, x)).collect();
    let tail = |j: usize| b[j..].iter().product::<f64>();
    (0..n).map(|j| a[j] * tail(j + 1)).sum::<f64>() + head * tail(0)
}

/// η, ζ with cos(2x − 2w) + s·cos(2x − β) = η·cos(2x − ζ).
pub fn eta_zeta(s: f64, beta: f64, w: f64) -> (f64, f64) {
    let eta = (1.0 + s * s + 2.0 * s * (2.0 * w - beta).cos()).sqrt();
    let zeta = ((2.0 * w).sin() + s * beta.sin()).atan2((2.0 * w).cos() + s * beta.cos());
    (eta, zeta)
}

/// Harmonic content of amplitude·cosⁿ(θ − phase).
#[derive(Debug, Clone, PartialEq)]
pub struct CosPowerExpansion {
    pub constant: f64,
    /// Terms a·cos(mθ + b) with a possibly negative; harmonics n, n−2, …
    pub terms: Vec<FourierTerm>,
}

impl CosPowerExpansion {
    pub fn eval(&self, theta: f64) -> f64 {
        self.constant
            + self
                .terms
                .iter()
                .map(|t| t.a * (t.n as f64 * theta + t.b).cos())
                .sum::<f64>()
    }

    /// As a series in x with θ = 2x (period π). Fails when only a constant remains.
    pub fn to_series(&self) -> Result<FourierSeries> {
        FourierSeries::new(PI, self.terms.clone())
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// cosⁿ u = 2^{1−n} Σ_{j<n/2} C(n, j) cos((n − 2j)u) + [n even] 2^{−n} C(n, n/2).
pub fn cospower_to_fourier(amplitude: f64, phase: f64, n: usize) -> CosPowerExpansion {
    if n == 0 {
        return CosPowerExpansion {
            constant: amplitude,
            terms: Vec::new(),
        };
    }
    let scale = amplitude * 2f64.powi(1 - n as i32);
    let mut terms = Vec::new();
    let mut constant = 0.0;
    for j in 0..=n / 2 {
        let m = n - 2 * j;
        if m == 0 {
            constant = 0.5 * scale * binomial(n, j);
        } else {
            terms.push(FourierTerm {
                n: m,
                a: scale * binomial(n, j),
                b: -(m as f64) * phase,
            });
        }
    }
    CosPowerExpansion { constant, terms }
}

/// Harmonic phasors (index = harmonic) of Σ amplitude·cosⁿ(θ − phase).
pub fn summed_harmonics(parts: &[(f64, f64, usize)]) -> Vec<Complex64> {
    let top = parts.iter().map(|p| p.2).max().unwrap_or(0);
    let mut h = vec![Complex64::new(0.0, 0.0); top + 1];
    for &(amp, phase, n) in parts {
        let e = cospower_to_fourier(amp, phase, n);
        h[0] += e.constant;
        for t in &e.terms {
            h[t.n] += Complex64::from_polar(t.a, t.b);
        }
    }
    h
}

/// Harmonic phasors of a plan's slot signal divided by C (slots must use
/// one phase for all links, as compiled plans do).
pub fn plan_harmonics_over_c(plan: &CompiledPlan) -> Vec<Complex64> {
    let parts: Vec<(f64, f64, usize)> = plan
        .slots
        .iter()
        .map(|s| (s.sign_f64() * s.gamma * s.alpha / plan.c, s.beta[0], s.n))
        .collect();
    summed_harmonics(&parts)
}
