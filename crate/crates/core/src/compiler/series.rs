use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SERIES_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierTerm {
    pub n: usize,
    pub a: f64,
    pub b: f64,
}

/// F(x) = Σ a_n cos(2π n x / T + b_n).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierSeries {
    #[serde(default = "default_version")]
    pub format_version: u32,
    #[serde(default = "default_period")]
    pub period: f64,
    pub terms: Vec<FourierTerm>,
}

fn default_version() -> u32 {
    SERIES_FORMAT_VERSION
}

fn default_period() -> f64 {
    PI
}

impl FourierSeries {
    pub fn new(period: f64, terms: Vec<FourierTerm>) -> Result<Self> {
        let s = Self {
            format_version: SERIES_FORMAT_VERSION,
            period,
            terms,
        };
        s.validate()?;
        Ok(s)
    }

    /// Series with period π from (n, a, b) triples.
    pub fn from_terms(terms: &[(usize, f64, f64)]) -> Result<Self> {
        Self::new(PI, terms.iter().map(|&(n, a, b)| FourierTerm { n, a, b }).collect())
    }

    /// Truncated square wave: a_n = 1/n, b_n = −π/2 for odd n ≤ n_max.
    pub fn square_wave(n_max: usize) -> Self {
        let terms = (1..=n_max)
            .step_by(2)
            .map(|n| FourierTerm {
                n,
                a: 1.0 / n as f64,
                b: -PI / 2.0,
            })
            .collect();
        Self::new(PI, terms).expect("square wave is valid")
    }

    pub fn validate(&self) -> Result<()> {
        if self.format_version != SERIES_FORMAT_VERSION {
            return Err(Error::Validation(format!(
                "unsupported series format_version {}",
                self.format_version
            )));
        }
        if !(self.period.is_finite() && self.period > 0.0) {
            return Err(Error::Validation(format!("period must be positive, got {}", self.period)));
        }
        if self.terms.is_empty() {
            return Err(Error::Validation("series has no terms".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for t in &self.terms {
            if t.n == 0 {
                return Err(Error::Validation("harmonic index must be >= 1".into()));
            }
            if !seen.insert(t.n) {
                return Err(Error::Validation(format!("harmonic {} listed twice", t.n)));
            }
            if !(t.a.is_finite() && t.b.is_finite()) {
                return Err(Error::Validation(format!("harmonic {} is not finite", t.n)));
            }
        }
        Ok(())
    }

    pub fn max_harmonic(&self) -> usize {
        self.terms.iter().map(|t| t.n).max().unwrap_or(0)
    }

    /// Maps the user variable onto the circuit input angle (period π).
    pub fn circuit_x(&self, x: f64) -> f64 {
        x * PI / self.period
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.terms.iter_mut().for_each(|t| t.a *= s);
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: Self = serde_json::from_str(text)
            .map_err(|e| Error::Validation(format!("series JSON: {e}")))?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("series serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Validation(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}
