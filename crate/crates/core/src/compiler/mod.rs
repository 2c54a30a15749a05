//! Fourier series → slot plan → circuit.
//!
//! Compilation works on harmonic phasors z_n = a_n e^{i b_n} in the circuit
//! variable θ = 2x (period π). Starting from the highest harmonic, each
//! nonzero residual phasor becomes one slot whose cosⁿ(θ − β) term cancels
//! it; the slot's lower harmonics are subtracted from the residual before
//! moving on.

mod assemble;
mod quadrature;
mod series;
pub mod slot;
mod un;
mod upre;

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use assemble::{assemble, slot_label_controls};
pub use quadrature::{fourier_from_samples, fourier_from_table, DEFAULT_QUADRATURE_POINTS};
pub use series::{FourierSeries, FourierTerm, SERIES_FORMAT_VERSION};
pub use slot::{angles_from_beta, angles_zero_theta, wrap_angle, LinkAngles, SlotSpec};
pub use un::{build_un, build_un_with, head_factor, un_gates, HeadMode, Placement, UnOptions};
pub use upre::{build_upre, upre_gates};

use crate::circuit::RegisterLayout;
use crate::error::{Error, Result};

pub const PLAN_FORMAT_VERSION: u32 = 1;
/// Grid used for the |C·F| ≤ ½ check.
pub const FEASIBILITY_GRID: usize = 4096;
const REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompileOptions {
    /// Use this scaling constant instead of the largest feasible one.
    pub pin_c: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompiledPlan {
    pub c: f64,
    pub period: f64,
    /// Series the plan was compiled from, when known.
    pub series: Option<FourierSeries>,
    pub slots: Vec<SlotSpec>,
    pub residual_weight: f64,
    pub layout: RegisterLayout,
}

/// A slot before scaling: `amplitude` is the signed coefficient of cosⁿ(θ − β).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawSlot {
    pub n: usize,
    pub amplitude: f64,
    pub beta: f64,
}

/// Laurent coefficients of cosⁿ(θ − β) in e^{imθ}, index m + n.
fn cospower_laurent(n: usize, beta: f64) -> Vec<Complex64> {
    let half = Complex64::from_polar(0.5, -beta);
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for _ in 0..n {
        c = times_cos(&c, half);
    }
    c
}

/// Multiply a Laurent polynomial by ½(e^{i(θ−β)} + e^{−i(θ−β)}), `half` = ½e^{−iβ}.
fn times_cos(c: &[Complex64], half: Complex64) -> Vec<Complex64> {
    let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 2];
    for (i, v) in c.iter().enumerate() {
        next[i] += v * half.conj();
        next[i + 2] += v * half;
    }
    next
}

/// Back-substitution in the unscaled series. Returns slots from highest
/// harmonic down.
pub fn back_substitute(series: &FourierSeries) -> Result<Vec<RawSlot>> {
    series.validate()?;
    let n_max = series.max_harmonic();
    let mut r = vec![Complex64::new(0.0, 0.0); n_max + 1];
    for t in &series.terms {
        r[t.n] = Complex64::from_polar(t.a, t.b);
    }
    let scale = series.terms.iter().map(|t| t.a.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::Degenerate);
    }

    let mut slots = Vec::new();
    for n in (1..=n_max).rev() {
        let z = r[n];
        if z.norm() <= REL_TOL * scale {
            continue;
        }
        let phi = z.arg();
        let (sign, b_prime) = if z.re > REL_TOL * z.norm() { (1.0, phi) } else { (-1.0, phi - PI) };
        let beta = wrap_angle(-b_prime / n as f64);
        let amplitude = sign * 2f64.powi(n as i32 - 1) * z.norm();

        let laurent = cospower_laurent(n, beta);
        for m in 1..=n {
            r[m] -= 2.0 * amplitude * laurent[n + m];
        }
        r[n] = Complex64::new(0.0, 0.0);
        slots.push(RawSlot { n, amplitude, beta });
    }
    if slots.is_empty() {
        return Err(Error::Degenerate);
    }
    Ok(slots)
}

fn ceil_log2(k: usize) -> usize {
    if k <= 1 {
        0
    } else {
        (k - 1).ilog2() as usize + 1
    }
}

pub fn compile_plan(series: &FourierSeries, options: CompileOptions) -> Result<CompiledPlan> {
    let raw = back_substitute(series)?;
    let alpha = 0.5;
    // Slot weight per unit C.
    let unit: Vec<f64> = raw.iter().map(|s| s.amplitude.abs() / alpha).collect();
    // Even powers leave a constant per unit C; the residual branch must be
    // able to cancel it, which costs residual weight 2|D|.
    let unit_dc: f64 = raw
        .iter()
        .map(|s| s.amplitude * cospower_laurent(s.n, s.beta)[s.n].re)
        .sum();
    let unit_total: f64 = unit.iter().sum::<f64>() + 2.0 * unit_dc.abs();

    let c = match options.pin_c {
        Some(c) if !(c.is_finite() && c != 0.0) => {
            return Err(Error::Validation(format!("pinned C must be finite and nonzero, got {c}")))
        }
        Some(c) => c,
        None => 1.0 / unit_total,
    };
    let total = c.abs() * unit_total;
    if total > 1.0 + REL_TOL {
        let (i, _) = unit
            .iter()
            .enumerate()
            .fold((0, 0.0), |best, (i, &u)| if u > best.1 { (i, u) } else { best });
        return Err(Error::Infeasible {
            slot: raw[i].n,
            total_weight: total,
        });
    }

    let mut slots: Vec<SlotSpec> = raw
        .iter()
        .zip(&unit)
        .map(|(s, u)| {
            let sign = if s.amplitude * c > 0.0 { 1 } else { -1 };
            SlotSpec::canonical(c.abs() * u, sign, vec![s.beta; s.n])
        })
        .collect();
    slots.sort_by_key(|s| s.n);

    let gamma_sum: f64 = slots.iter().map(|s| s.gamma).sum();
    let residual_weight = (1.0 - gamma_sum).max(0.0);
    let labels = slots.len() + usize::from(residual_weight > REL_TOL);
    let n_q = slots.last().map(|s| s.n).unwrap_or(1);
    let plan = CompiledPlan {
        c,
        period: series.period,
        series: Some(series.clone()),
        slots,
        residual_weight,
        layout: RegisterLayout::standard(ceil_log2(labels), n_q),
    };

    let dc = plan.constant_offset();
    let peak = (0..FEASIBILITY_GRID)
        .map(|i| (plan_signal(&plan, PI * i as f64 / FEASIBILITY_GRID as f64) - dc).abs())
        .fold(0.0, f64::max);
    if peak > 0.5 + 1e-12 {
        return Err(Error::Infeasible {
            slot: plan.slots.last().map_or(0, |s| s.n),
            total_weight: total,
        });
    }
    Ok(plan)
}

/// Σ sign·γ·α·∏cos(2x − β) at circuit angle x.
fn plan_signal(plan: &CompiledPlan, x: f64) -> f64 {
    plan.slots
        .iter()
        .map(|s| s.sign_f64() * s.gamma * s.alpha * s.beta.iter().map(|b| (2.0 * x - b).cos()).product::<f64>())
        .sum()
}

/// Constant term of ∏ cos(2x − β_k).
pub fn slot_constant(beta: &[f64]) -> f64 {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &b in beta {
        c = times_cos(&c, Complex64::from_polar(0.5, -b));
    }
    c[beta.len()].re
}

impl CompiledPlan {
    pub fn has_residual(&self) -> bool {
        self.residual_weight > REL_TOL
    }

    /// Constant term D of Σ sign·γ·α·∏cos(2x − β).
    pub fn constant_offset(&self) -> f64 {
        self.slots
            .iter()
            .map(|s| s.sign_f64() * s.gamma * s.alpha * slot_constant(&s.beta))
            .sum()
    }

    /// Probability that q_N reads 1 on the residual branch: ½ − D/γ₀, so the
    /// whole circuit reads C·F + ½ with no constant bias.
    pub fn residual_readout(&self) -> f64 {
        if !self.has_residual() {
            return 0.5;
        }
        (0.5 - self.constant_offset() / self.residual_weight).clamp(0.0, 1.0)
    }

    /// Weights in slot-label order, padded with zeros to 2^M.
    pub fn padded_weights(&self) -> Vec<f64> {
        let mut g: Vec<f64> = self.slots.iter().map(|s| s.gamma).collect();
        if self.has_residual() {
            g.push(self.residual_weight);
        }
        g.resize(1 << self.layout.qprime.len(), 0.0);
        g
    }

    /// Circuit input angle for a point of the series' own variable.
    pub fn circuit_x(&self, x: f64) -> f64 {
        x * PI / self.period
    }

    pub fn validate(&self) -> Result<()> {
        self.layout.validate()?;
        if !(self.c.is_finite() && self.c != 0.0) {
            return Err(Error::Validation(format!("C must be finite and nonzero, got {}", self.c)));
        }
        if !(self.period.is_finite() && self.period > 0.0) {
            return Err(Error::Validation(format!("period must be positive, got {}", self.period)));
        }
        if self.slots.is_empty() {
            return Err(Error::Validation("plan has no slots".into()));
        }
        for s in &self.slots {
            un::check_slot(s)?;
            if !(s.gamma.is_finite() && s.gamma >= 0.0) {
                return Err(Error::Validation(format!("slot n={} has weight {}", s.n, s.gamma)));
            }
            if s.n > self.layout.q.len() {
                return Err(Error::LayoutTooSmall {
                    needed: s.n,
                    available: self.layout.q.len(),
                });
            }
        }
        if !(self.residual_weight.is_finite() && self.residual_weight >= 0.0) {
            return Err(Error::Validation(format!("residual weight {}", self.residual_weight)));
        }
        let total: f64 = self.slots.iter().map(|s| s.gamma).sum::<f64>() + self.residual_weight;
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Validation(format!("weights sum to {total}")));
        }
        let dc = self.constant_offset();
        if 2.0 * dc.abs() > self.residual_weight + 1e-9 {
            return Err(Error::Validation(format!(
                "residual weight {} cannot cancel constant offset {dc}",
                self.residual_weight
            )));
        }
        let labels = self.slots.len() + usize::from(self.has_residual());
        if labels > 1 << self.layout.qprime.len() {
            return Err(Error::Validation(format!(
                "{labels} slot labels do not fit in {} q' qubits",
                self.layout.qprime.len()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PlanFile::from(self)).expect("plan serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PlanFile =
            serde_json::from_str(text).map_err(|e| Error::Validation(format!("plan JSON: {e}")))?;
        if file.format_version != PLAN_FORMAT_VERSION {
            return Err(Error::Validation(format!(
                "unsupported plan format_version {}",
                file.format_version
            )));
        }
        let plan = file.into_plan()?;
        plan.validate()?;
        Ok(plan)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Validation(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[derive(Serialize, Deserialize)]
struct PlanFile {
    format_version: u32,
    #[serde(rename = "C")]
    c: f64,
    period: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    series: Option<FourierSeries>,
    residual_weight: f64,
    slots: Vec<SlotFile>,
    layout: RegisterLayout,
}

#[derive(Serialize, Deserialize)]
struct SlotFile {
    n: usize,
    gamma: f64,
    sign: i8,
    alpha: f64,
    beta: Vec<f64>,
    theta: Vec<f64>,
    theta_prime: Vec<f64>,
}

impl From<&CompiledPlan> for PlanFile {
    fn from(p: &CompiledPlan) -> Self {
        Self {
            format_version: PLAN_FORMAT_VERSION,
            c: p.c,
            period: p.period,
            series: p.series.clone(),
            residual_weight: p.residual_weight,
            layout: p.layout.clone(),
            slots: p
                .slots
                .iter()
                .map(|s| SlotFile {
                    n: s.n,
                    gamma: s.gamma,
                    sign: s.sign,
                    alpha: s.alpha,
                    beta: s.beta.clone(),
                    theta: s.links.iter().map(|l| l.theta).collect(),
                    theta_prime: s.links.iter().map(|l| l.theta_prime).collect(),
                })
                .collect(),
        }
    }
}

impl PlanFile {
    fn into_plan(self) -> Result<CompiledPlan> {
        let slots = self
            .slots
            .into_iter()
            .map(|s| {
                if s.theta.len() != s.n || s.theta_prime.len() != s.n {
                    return Err(Error::Validation(format!("slot n={} has wrong angle count", s.n)));
                }
                let links = s
                    .theta
                    .iter()
                    .zip(&s.theta_prime)
                    .map(|(&theta, &theta_prime)| LinkAngles { theta, theta_prime })
                    .collect();
                Ok(SlotSpec {
                    n: s.n,
                    gamma: s.gamma,
                    sign: s.sign,
                    beta: s.beta,
                    alpha: s.alpha,
                    links,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(s) = &self.series {
            s.validate()?;
        }
        Ok(CompiledPlan {
            c: self.c,
            period: self.period,
            series: self.series,
            slots,
            residual_weight: self.residual_weight,
            layout: self.layout,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_wave_slots() {
        let plan = compile_plan(&FourierSeries::square_wave(7), CompileOptions::default()).unwrap();
        let ns: Vec<usize> = plan.slots.iter().map(|s| s.n).collect();
        assert_eq!(ns, vec![1, 3, 5, 7]);
        assert_eq!(plan.layout.qprime.len(), 2);
        assert_eq!(plan.layout.num_qubits(), 11);
        assert!(plan.residual_weight < 1e-12);
        let total: f64 = plan.slots.iter().map(|s| s.gamma).sum::<f64>() + plan.residual_weight;
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_cosine() {
        let s = FourierSeries::from_terms(&[(1, 1.0, 0.0)]).unwrap();
        let plan = compile_plan(&s, CompileOptions { pin_c: Some(0.25) }).unwrap();
        assert_eq!(plan.slots.len(), 1);
        let slot = &plan.slots[0];
        assert_eq!((slot.n, slot.sign), (1, 1));
        assert_eq!(slot.beta, vec![0.0]);
        assert!((slot.gamma * slot.alpha - 0.25).abs() < 1e-15);
        assert!((plan.residual_weight - 0.5).abs() < 1e-15);
        assert_eq!(plan.layout.qprime.len(), 1);
    }

    #[test]
    fn degenerate_and_infeasible() {
        let zero = FourierSeries::from_terms(&[(1, 0.0, 0.3), (2, 0.0, 0.0)]).unwrap();
        assert!(matches!(compile_plan(&zero, CompileOptions::default()), Err(Error::Degenerate)));
        let sq = FourierSeries::square_wave(7);
        match compile_plan(&sq, CompileOptions { pin_c: Some(0.05) }) {
            Err(Error::Infeasible { slot, total_weight }) => {
                assert_eq!(slot, 3);
                assert!(total_weight > 1.0);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
        assert!(compile_plan(&sq, CompileOptions { pin_c: Some(0.0) }).is_err());
    }

    #[test]
    fn negative_c_flips_signs() {
        let s = FourierSeries::from_terms(&[(2, 0.7, 0.4)]).unwrap();
        let p = compile_plan(&s, CompileOptions { pin_c: Some(0.1) }).unwrap();
        let q = compile_plan(&s, CompileOptions { pin_c: Some(-0.1) }).unwrap();
        assert_eq!(p.slots.len(), q.slots.len());
        for (a, b) in p.slots.iter().zip(&q.slots) {
            assert_eq!(a.sign, -b.sign);
            assert_eq!(a.gamma, b.gamma);
        }
    }

    #[test]
    fn plan_json_round_trip() {
        let plan = compile_plan(&FourierSeries::square_wave(7), CompileOptions::default()).unwrap();
        let back = CompiledPlan::from_json(&plan.to_json()).unwrap();
        assert_eq!(plan, back);
        assert!(plan.to_json().contains("\"format_version\": 1"));
        assert!(CompiledPlan::from_json("{\"C\": 1}").is_err());
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!([1, 2, 3, 4, 5, 8, 9].map(ceil_log2), [0, 1, 2, 2, 3, 3, 4]);
    }
}
