//! Numerical checks of the linear, trilinear and auxiliary estimates.

mod counterexample;
mod ensembles;
mod lemmas;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use counterexample::{
    counterexample_scan, counterexample_theta, fit_slope, support_violations, CounterexampleScan,
    CounterexampleTheta, Region, RegionSpec,
};
pub use ensembles::{
    field_ensemble, linear_estimate_ratio, linear_estimate_sides, packet_ensemble, trilinear_ratio, EnsembleConfig, FieldFamily,
    LinearEstimate, PacketRanges,
};
pub use lemmas::{
    calculus_lemma_check, calculus_lemma_lhs, eta, eta_integral, eta_transform, fdecay_check, laplace_bound_check,
    laplace_ratio_function, laplace_ratio_steps, multiplier_lemma_check, multiplier_lhs, multiplier_sweep, phi_ell,
    profile_transform, profile_transform_direct, step_ensemble, time_scaling_check, CalculusProfile, DecayRow,
    FDecayReport, ProfileTable, StepFunction,
};

/// Generator for ensemble member `index`: the same member is drawn whatever
/// the ensemble size, so a doubled ensemble contains the original one.
pub fn member_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Summary of a set of LHS/RHS ratios.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioStats {
    pub count: usize,
    pub max: f64,
    pub min: f64,
    pub mean: f64,
    pub median: f64,
    pub ratios: Vec<f64>,
}

impl RatioStats {
    pub fn from_ratios(ratios: Vec<f64>) -> Self {
        let count = ratios.len();
        if count == 0 {
            return Self { count, max: 0.0, min: 0.0, mean: 0.0, median: 0.0, ratios };
        }
        let mut sorted = ratios.clone();
        sorted.sort_by(|a, b| a.total_cmp(b));
        let median = if count % 2 == 1 {
            sorted[count / 2]
        } else {
            0.5 * (sorted[count / 2 - 1] + sorted[count / 2])
        };
        Self {
            count,
            max: sorted[count - 1],
            min: sorted[0],
            mean: ratios.iter().sum::<f64>() / count as f64,
            median,
            ratios,
        }
    }
}

/// One verification outcome, serialised as the JSON report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, f64>,
    pub predicted: Option<f64>,
    pub measured: f64,
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl VerificationReport {
    /// Passes when |measured − predicted| ≤ tolerance.
    pub fn compare(check: &str, params: &[(&str, f64)], predicted: f64, measured: f64, tolerance: f64) -> Self {
        Self {
            check: check.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            predicted: Some(predicted),
            measured,
            tolerance: Some(tolerance),
            pass: (measured - predicted).abs() <= tolerance,
        }
    }

    /// Passes when measured ≤ bound + tolerance.
    pub fn upper_bound(check: &str, params: &[(&str, f64)], bound: f64, measured: f64, tolerance: f64) -> Self {
        Self {
            check: check.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            predicted: Some(bound),
            measured,
            tolerance: Some(tolerance),
            pass: measured.is_finite() && measured <= bound + tolerance,
        }
    }

    /// A measured quantity with an externally decided verdict.
    pub fn verdict(check: &str, params: &[(&str, f64)], measured: f64, pass: bool) -> Self {
        Self {
            check: check.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            predicted: None,
            measured,
            tolerance: None,
            pass,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn member_streams_do_not_depend_on_ensemble_size() {
        let a: f64 = member_rng(9, 3).gen();
        let b: f64 = member_rng(9, 3).gen();
        let c: f64 = member_rng(9, 4).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn stats_summary() {
        let s = RatioStats::from_ratios(vec![3.0, 1.0, 2.0, 10.0]);
        assert_eq!((s.max, s.min, s.median, s.mean), (10.0, 1.0, 2.5, 4.0));
        assert_eq!(RatioStats::from_ratios(vec![]).max, 0.0);
    }

    #[test]
    fn report_round_trips_through_json() {
        let r = VerificationReport::compare("slope", &[("n", 2.0)], 0.2, 0.21, 0.05);
        assert!(r.pass);
        let text = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(r, back);
        assert!(!VerificationReport::upper_bound("x", &[], 1.0, f64::NAN, 0.0).pass);
    }
}
