//! Per-slot chain parameters and the two angle conventions.
//!
//! A link stores the rotation pair (θ, θ′) applied when the previous chain
//! qubit reads 0 or 1. The head link has θ = θ′. With the input factor
//! cos x|0> + sin x|1>, the derived angles are w₀ = −θ/2, w₁ = π/2 − θ/2 and
//! likewise v from θ′.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkAngles {
    pub theta: f64,
    pub theta_prime: f64,
}

impl LinkAngles {
    pub fn w0(&self) -> f64 {
        -self.theta / 2.0
    }

    pub fn w1(&self) -> f64 {
        FRAC_PI_2 - self.theta / 2.0
    }

    pub fn v0(&self) -> f64 {
        -self.theta_prime / 2.0
    }

    pub fn v1(&self) -> f64 {
        FRAC_PI_2 - self.theta_prime / 2.0
    }

    /// Inverse of [`w1`](Self::w1)/[`v1`](Self::v1).
    pub fn from_w1_v1(w1: f64, v1: f64) -> Self {
        Self {
            theta: PI - 2.0 * w1,
            theta_prime: PI - 2.0 * v1,
        }
    }

    /// |sin(v₁ − w₁)|, the link's amplitude factor.
    pub fn strength(&self) -> f64 {
        (self.v1() - self.w1()).sin().abs()
    }

    /// Phase β of a non-head link.
    pub fn link_beta(&self) -> f64 {
        let (w, v) = (self.w1(), self.v1());
        ((2.0 * v).sin() - (2.0 * w).sin()).atan2((2.0 * v).cos() - (2.0 * w).cos())
    }

    /// Phase β = 2w₁ of the head link.
    pub fn head_beta(&self) -> f64 {
        wrap_angle(2.0 * self.w1())
    }
}

/// Representative of `a` in (−π, π].
pub fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// One chain U_n and its slot weight.
#[derive(Debug, Clone, PartialEq)]
pub struct SlotSpec {
    pub n: usize,
    pub gamma: f64,
    /// +1 or −1.
    pub sign: i8,
    pub beta: Vec<f64>,
    pub alpha: f64,
    pub links: Vec<LinkAngles>,
}

impl SlotSpec {
    /// Slot with canonical angles for the given phases.
    pub fn canonical(gamma: f64, sign: i8, beta: Vec<f64>) -> Self {
        let links = angles_from_beta(&beta);
        Self {
            n: beta.len(),
            gamma,
            sign,
            alpha: chain_alpha(&links),
            beta,
            links,
        }
    }

    /// Phases re-derived from the stored angles.
    pub fn realized_beta(&self) -> Vec<f64> {
        realized_beta(&self.links)
    }

    pub fn sign_f64(&self) -> f64 {
        f64::from(self.sign)
    }
}

/// Canonical angles: v₁ − w₁ = π/2 on every link, so each link has unit
/// strength and α = ½. Head: 2w₁ = β₁.
pub fn angles_from_beta(beta: &[f64]) -> Vec<LinkAngles> {
    beta.iter()
        .enumerate()
        .map(|(k, &b)| {
            if k == 0 {
                LinkAngles::from_w1_v1(b / 2.0, b / 2.0)
            } else {
                LinkAngles::from_w1_v1((b - PI) / 2.0, b / 2.0)
            }
        })
        .collect()
}

/// Alternative convention with θ = 0 on every link:
/// θ′ = −2·[(β − π/2) mod π], head θ = −β. Each link then realizes β − π
/// with strength |sin((β − π/2) mod π)| and the head realizes β + π.
pub fn angles_zero_theta(beta: &[f64]) -> Vec<LinkAngles> {
    beta.iter()
        .enumerate()
        .map(|(k, &b)| {
            if k == 0 {
                LinkAngles {
                    theta: -b,
                    theta_prime: -b,
                }
            } else {
                LinkAngles {
                    theta: 0.0,
                    theta_prime: -2.0 * (b - FRAC_PI_2).rem_euclid(PI),
                }
            }
        })
        .collect()
}

pub fn realized_beta(links: &[LinkAngles]) -> Vec<f64> {
    links
        .iter()
        .enumerate()
        .map(|(k, l)| if k == 0 { l.head_beta() } else { l.link_beta() })
        .collect()
}

/// ½·∏_{k≥2} |sin(v₁ − w₁)|.
pub fn chain_alpha(links: &[LinkAngles]) -> f64 {
    0.5 * links.iter().skip(1).map(LinkAngles::strength).product::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_theta_convention_at_quarter_turn() {
        let l = angles_zero_theta(&[0.3, FRAC_PI_2, FRAC_PI_2]);
        assert_eq!(l[1].theta, 0.0);
        assert_eq!(l[1].theta_prime, 0.0);
    }

    #[test]
    fn canonical_alpha_is_half() {
        for n in 1..=7 {
            let beta: Vec<f64> = (0..n).map(|k| 0.3 * k as f64 - 1.0).collect();
            let s = SlotSpec::canonical(0.5, 1, beta);
            assert!((s.alpha - 0.5).abs() < 1e-15);
            for l in &s.links[1..] {
                assert!(((l.v1() - l.w1()) - FRAC_PI_2).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn wrap_range() {
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(4.8812) - (4.8812 - 2.0 * PI)).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn beta_round_trip(beta in prop::collection::vec(-PI + 1e-9..=PI, 1..8)) {
            let links = angles_from_beta(&beta);
            let back = realized_beta(&links);
            for (a, b) in beta.iter().zip(&back) {
                prop_assert!(wrap_angle(a - b).abs() < 1e-12);
            }
        }

        #[test]
        fn w_v_inverse(w in -4.0f64..4.0, v in -4.0f64..4.0) {
            let l = LinkAngles::from_w1_v1(w, v);
            prop_assert!((l.w1() - w).abs() < 1e-12 && (l.v1() - v).abs() < 1e-12);
            prop_assert!((l.w1() - l.w0() - FRAC_PI_2).abs() < 1e-12);
        }
    }
}
