//! Smooth cutoffs built from one C^∞ step.

use serde::{Deserialize, Serialize};

/// C^∞ step: 0 for y ≤ 0, 1 for y ≥ 1, strictly increasing in between.
pub fn smooth_step(y: f64) -> f64 {
    if y <= 0.0 {
        0.0
    } else if y >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / y).exp();
        let b = (-1.0 / (1.0 - y)).exp();
        a / (a + b)
    }
}

/// One-sided cutoff: 0 for x ≤ -1, 1 for x ≥ 0.
pub fn rho(x: f64) -> f64 {
    smooth_step(x + 1.0)
}

/// Smoothed absolute value: x for x ≥ 0, -x for x ≤ -1.
pub fn phi1(x: f64) -> f64 {
    x * (2.0 * rho(x) - 1.0)
}

/// Time localizer: 1 on |t| ≤ 1/2, 0 for |t| ≥ 1.
pub fn psi(t: f64) -> f64 {
    smooth_step(2.0 - 2.0 * t.abs())
}

/// Decaying profile `e^{-x} ρ(x)` used when extending into the half-space.
pub fn exp_profile(x: f64) -> f64 {
    (-x).exp() * rho(x)
}

/// Frequency taper on [0, cutoff]: 1 below `start·cutoff`, smoothly down to 0 at the cutoff.
pub fn frequency_taper(xi: f64, cutoff: f64, start: f64) -> f64 {
    let y = (xi.abs() / cutoff - start) / (1.0 - start);
    smooth_step(1.0 - y)
}

/// The three cutoffs as one value, for callers that want to pass them around.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Cutoffs;

impl Cutoffs {
    pub fn psi(&self, t: f64) -> f64 {
        psi(t)
    }
    pub fn rho(&self, x: f64) -> f64 {
        rho(x)
    }
    pub fn phi1(&self, x: f64) -> f64 {
        phi1(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn step_is_symmetric_about_one_half() {
        for k in 0..=100 {
            let y = k as f64 / 100.0;
            assert!((smooth_step(y) + smooth_step(1.0 - y) - 1.0).abs() < 1e-15);
        }
        assert_eq!(smooth_step(0.5), 0.5);
    }

    #[test]
    fn taper_is_one_below_start_and_zero_at_cutoff() {
        assert_eq!(frequency_taper(4.9, 10.0, 0.5), 1.0);
        assert_eq!(frequency_taper(10.0, 10.0, 0.5), 0.0);
        assert!(frequency_taper(7.5, 10.0, 0.5) > 0.0);
    }

    proptest! {
        #[test]
        fn psi_invariants(t in -2.0f64..2.0) {
            let v = psi(t);
            prop_assert!((0.0..=1.0).contains(&v));
            if t.abs() <= 0.5 { prop_assert_eq!(v, 1.0); }
            if t.abs() >= 1.0 { prop_assert_eq!(v, 0.0); }
            prop_assert_eq!(v, psi(-t));
        }

        #[test]
        fn rho_and_phi1_invariants(x in -3.0f64..3.0) {
            let r = rho(x);
            prop_assert!((0.0..=1.0).contains(&r));
            if x >= 0.0 { prop_assert_eq!(r, 1.0); prop_assert_eq!(phi1(x), x); }
            if x <= -1.0 { prop_assert_eq!(r, 0.0); prop_assert_eq!(phi1(x), -x); }
        }

        #[test]
        fn step_is_monotone(a in -0.5f64..1.5, d in 0.0f64..1.0) {
            prop_assert!(smooth_step(a) <= smooth_step(a + d));
        }
    }
}
