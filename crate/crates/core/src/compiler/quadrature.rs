//! Fourier coefficients of a function sampled on [x₁, x₂].
//!
//! The function is extended evenly about x₂ to period T = 2(x₂ − x₁)
//! (F(x) = f(2x₂ − x) on the second half) and projected with the midpoint
//! rule on `points` cells per half period:
//! Cₙ = (2/T)∫F cos(2πnx/T), Sₙ = (2/T)∫F sin(2πnx/T), aₙ = √(Cₙ² + Sₙ²),
//! bₙ = −atan2(Sₙ, Cₙ). The returned series has period π in the rescaled
//! variable πx/T. The constant term is dropped.

use std::f64::consts::PI;

use super::series::{FourierSeries, FourierTerm};
use crate::error::{Error, Result};

pub const DEFAULT_QUADRATURE_POINTS: usize = 4096;

pub fn fourier_from_samples(f: impl Fn(f64) -> f64, x1: f64, x2: f64, n_max: usize) -> Result<FourierSeries> {
    check_range(x1, x2)?;
    let k = DEFAULT_QUADRATURE_POINTS;
    let h = (x2 - x1) / k as f64;
    let samples: Vec<f64> = (0..k).map(|i| f(x1 + (i as f64 + 0.5) * h)).collect();
    fourier_from_table(&samples, x1, x2, n_max)
}

/// `samples[i]` is f at the midpoint of cell i of a uniform split of [x₁, x₂].
pub fn fourier_from_table(samples: &[f64], x1: f64, x2: f64, n_max: usize) -> Result<FourierSeries> {
    check_range(x1, x2)?;
    if n_max == 0 {
        return Err(Error::Validation("max harmonic must be >= 1".into()));
    }
    if samples.is_empty() {
        return Err(Error::Validation("no samples".into()));
    }
    if let Some(v) = samples.iter().find(|v| !v.is_finite()) {
        return Err(Error::Validation(format!("non-finite sample {v}")));
    }
    let k = samples.len();
    let period = 2.0 * (x2 - x1);
    let h = (x2 - x1) / k as f64;

    let terms = (1..=n_max)
        .map(|n| {
            let w = 2.0 * PI * n as f64 / period;
            let (mut c, mut s) = (0.0, 0.0);
            for (i, &v) in samples.iter().enumerate() {
                let x = x1 + (i as f64 + 0.5) * h;
                let mirrored = 2.0 * x2 - x;
                c += v * ((w * x).cos() + (w * mirrored).cos());
                s += v * ((w * x).sin() + (w * mirrored).sin());
            }
            let (c, s) = (c * h * 2.0 / period, s * h * 2.0 / period);
            FourierTerm {
                n,
                a: c.hypot(s),
                b: -s.atan2(c),
            }
        })
        .collect();
    FourierSeries::new(PI, terms)
}

fn check_range(x1: f64, x2: f64) -> Result<()> {
    if !(x1.is_finite() && x2.is_finite() && x2 > x1) {
        return Err(Error::Validation(format!("need x1 < x2, got [{x1}, {x2}]")));
    }
    Ok(())
}
