use serde::{Deserialize, Serialize};

use crate::cutoffs::frequency_taper;
use crate::error::{config, Result};
use crate::quadrature::{CompositeRule, Rule, PANEL_ORDER};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Nodes and (tapered) weights on [0, Ξₙ].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Leg {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Discretized ∂D⁺: the positive real axis and the positive imaginary axis of
/// the ξ_n-plane, the latter parametrized by ξ_n = iκ with κ ∈ [0, Ξₙ].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourPath {
    pub real_leg: Leg,
    pub imaginary_leg: Leg,
    pub xi_n_max: f64,
    pub taper_start: f64,
    /// Horizon T the panel layout was sized for.
    pub horizon: f64,
    /// Largest |x_n ± x_n′| the panel layout resolves.
    pub reach: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub xi_n_max: f64,
    pub taper_start: f64,
    pub nodes_per_period: usize,
    pub rule: Rule,
    pub min_panels: usize,
}

impl ContourPath {
    /// Panels follow the local phase rate 2ξT + reach of the contour integrands.
    pub fn new(spec: &ContourSpec, horizon: f64, reach: f64) -> Result<Self> {
        if !(spec.xi_n_max > 0.0) {
            return config("contour cutoff must be positive");
        }
        if !(0.0..1.0).contains(&spec.taper_start) {
            return config(format!("taper start {} must lie in [0, 1)", spec.taper_start));
        }
        if spec.nodes_per_period < 4 {
            return config("contour needs at least 4 nodes per period");
        }
        let xi_max = spec.xi_n_max;
        let rule = match spec.rule {
            Rule::GaussLegendreComposite => {
                let max_width = xi_max / spec.min_panels.max(1) as f64;
                let mut breaks = vec![0.0];
                let mut a = 0.0;
                while a < xi_max {
                    let rate = 2.0 * a * horizon + reach;
                    let width = if rate > 0.0 {
                        (TWO_PI / rate * PANEL_ORDER as f64 / spec.nodes_per_period as f64).min(max_width)
                    } else {
                        max_width
                    };
                    a = (a + width).min(xi_max);
                    if xi_max - a < 1e-3 * width {
                        a = xi_max;
                    }
                    breaks.push(a);
                }
                CompositeRule::gauss_on_breakpoints(&breaks, PANEL_ORDER)
            }
            Rule::Trapezoid => {
                let rate = 2.0 * xi_max * horizon + reach;
                let h = (TWO_PI / rate / spec.nodes_per_period as f64)
                    .min(xi_max / (spec.min_panels.max(1) * PANEL_ORDER) as f64);
                let count = (xi_max / h).ceil() as usize + 1;
                let mut r = CompositeRule::trapezoid(0.0, xi_max, count);
                // The taper vanishes at the cutoff node.
                r.nodes.pop();
                r.weights.pop();
                r
            }
        };
        // Nodes where the taper underflows to zero carry nothing and are dropped.
        let (nodes, weights): (Vec<f64>, Vec<f64>) = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&x, &w)| (x, w * frequency_taper(x, xi_max, spec.taper_start)))
            .filter(|&(_, w)| w > 0.0)
            .unzip();
        let leg = Leg { nodes, weights };
        Ok(Self {
            real_leg: leg.clone(),
            imaginary_leg: leg,
            xi_n_max: xi_max,
            taper_start: spec.taper_start,
            horizon,
            reach,
        })
    }

    pub fn node_count(&self) -> usize {
        self.real_leg.nodes.len() + self.imaginary_leg.nodes.len()
    }
}
