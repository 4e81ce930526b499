//! Numerical checks of the auxiliary inequalities: the L² bound of the
//! Laplace transform, the two-weight calculus integral, the decay of the
//! profile transform F, the multiplier bound built on it, and the
//! time-localisation estimate in X^{s,b}.

use num_complex::Complex64 as C64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::counterexample::fit_slope;
use super::{member_rng, RatioStats};
use crate::cutoffs::{psi, rho};
use crate::error::{config, domain, Result};
use crate::grid::SampledField;
use crate::norms::{pairwise_sum, xsb_norm};
use crate::quadrature::{CompositeRule, PANEL_ORDER};
use crate::transforms::full_fourier;

// ---------------------------------------------------------------------------
// Laplace transform on L²(0, ∞)

/// Nonnegative step function Σ h_i χ_{[b_i, b_{i+1}]}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepFunction {
    pub breaks: Vec<f64>,
    pub heights: Vec<f64>,
}

impl StepFunction {
    pub fn validate(&self) -> Result<()> {
        if self.breaks.len() != self.heights.len() + 1 || self.heights.is_empty() {
            return config("a step function needs one more breakpoint than heights");
        }
        if self.breaks[0] < 0.0 || self.breaks.windows(2).any(|w| !(w[1] > w[0])) {
            return config("breakpoints must be increasing and nonnegative");
        }
        Ok(())
    }

    pub fn l2_norm_sqr(&self) -> f64 {
        self.heights.iter().zip(self.breaks.windows(2)).map(|(h, w)| h * h * (w[1] - w[0])).sum()
    }
}

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// ∫_{[p,q]×[r,s]} da db / (a + b), from the antiderivative (a+b) ln(a+b).
fn hilbert_block(p: f64, q: f64, r: f64, s: f64) -> f64 {
    xlogx(q + s) - xlogx(q + r) - xlogx(p + s) + xlogx(p + r)
}

/// ‖LQ‖/‖Q‖ for a step function, using ‖LQ‖² = ∫∫ Q(a)Q(b)/(a+b) exactly.
pub fn laplace_ratio_steps(q: &StepFunction) -> Result<f64> {
    q.validate()?;
    let norm2 = q.l2_norm_sqr();
    if norm2 == 0.0 {
        return Ok(0.0);
    }
    let cells: Vec<(f64, f64, f64)> = q.breaks.windows(2).zip(&q.heights).map(|(w, &h)| (w[0], w[1], h)).collect();
    let mut form = 0.0;
    for &(p, qq, hi) in &cells {
        for &(r, s, hj) in &cells {
            form += hi * hj * hilbert_block(p, qq, r, s);
        }
    }
    Ok((form / norm2).sqrt())
}

/// Gauss panels on (0, extent), refined geometrically towards 0.
fn graded_rule(extent: f64) -> CompositeRule {
    let mut breaks = vec![0.0];
    breaks.extend((0..48).rev().map(|k| 2f64.powi(-k).min(extent)));
    let mut x = 1.0;
    while x < extent {
        x = (x + 1.0).min(extent);
        breaks.push(x);
    }
    breaks.dedup();
    CompositeRule::gauss_on_breakpoints(&breaks, PANEL_ORDER)
}

/// ‖LQ‖/‖Q‖ for Q sampled by a function on (0, extent), by the same quadratic
/// form on a graded Gauss rule.
pub fn laplace_ratio_function<F: Fn(f64) -> f64>(q: F, extent: f64) -> f64 {
    let rule = graded_rule(extent);
    let v: Vec<f64> = rule.nodes.iter().map(|&x| q(x)).collect();
    let norm2: f64 = rule.weights.iter().zip(&v).map(|(w, q)| w * q * q).sum();
    if norm2 == 0.0 {
        return 0.0;
    }
    // Rows in parallel, summed in a fixed order so results do not depend on scheduling.
    let rows: Vec<f64> = (0..v.len())
        .into_par_iter()
        .map(|i| {
            let wi = rule.weights[i] * v[i];
            (0..v.len()).map(|j| wi * rule.weights[j] * v[j] / (rule.nodes[i] + rule.nodes[j])).sum::<f64>()
        })
        .collect();
    (pairwise_sum(&rows) / norm2).sqrt()
}

/// Random nonnegative step functions with log-uniform breakpoints in
/// [10⁻³, 10³]; half of them have heights ∝ ξ^{−1/2}, close to extremal.
pub fn step_ensemble(count: usize, seed: u64) -> Vec<StepFunction> {
    (0..count)
        .map(|i| {
            let mut rng = member_rng(seed, i);
            let k = rng.gen_range(1..=24);
            let mut breaks: Vec<f64> = (0..=k).map(|_| 10f64.powf(rng.gen_range(-3.0..3.0))).collect();
            breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
            breaks.dedup();
            if breaks.len() < 2 {
                breaks.push(breaks[0] * 2.0);
            }
            if rng.gen_bool(0.3) {
                breaks[0] = 0.0;
            }
            let power = i % 2 == 1;
            let heights = breaks
                .windows(2)
                .map(|w| {
                    let u: f64 = rng.gen_range(0.0..1.0);
                    if power {
                        (0.5 + 0.5 * u) / (0.5 * (w[0] + w[1])).sqrt()
                    } else {
                        u
                    }
                })
                .collect();
            StepFunction { breaks, heights }
        })
        .collect()
}

/// Max of ‖LQ‖/‖Q‖ over the ensemble.
pub fn laplace_bound_check(ensemble: &[StepFunction]) -> Result<RatioStats> {
    let ratios = ensemble.par_iter().map(laplace_ratio_steps).collect::<Result<Vec<_>>>()?;
    Ok(RatioStats::from_ratios(ratios))
}

// ---------------------------------------------------------------------------
// Two-weight calculus integral

/// φ_ℓ(k) with 1 + log(1+|k|) at ℓ = 1/2, so the bound stays positive at k = 0.
pub fn phi_ell(ell: f64, k: f64) -> f64 {
    let k = k.abs();
    if (ell - 0.5).abs() < 1e-12 {
        1.0 + (1.0 + k).ln()
    } else if ell > 0.5 {
        1.0
    } else {
        (1.0 + k).powf(1.0 - 2.0 * ell)
    }
}

/// ∫_ℝ dx / ((1+|x|)^{2ℓ} (1+|x−k|)^{2ℓ′}) by Gauss panels in u = log(1+distance).
pub fn calculus_lemma_lhs(ell: f64, ell_prime: f64, k: f64) -> Result<f64> {
    if !(ell >= ell_prime && ell_prime >= 0.0 && 2.0 * ell + 2.0 * ell_prime > 1.0) {
        return domain(format!("need ℓ ≥ ℓ′ ≥ 0 and 2ℓ+2ℓ′ > 1, got ({ell}, {ell_prime})"));
    }
    let (p, q) = (2.0 * ell, 2.0 * ell_prime);
    let k = k.abs();
    let decay = p + q - 1.0;
    let outer_end = (1.0 + k).ln() + 45.0 / decay;
    let panels = |end: f64| ((end / 0.25).ceil() as usize).max(1);
    let tail = |own: f64, other: f64| -> f64 {
        // distance y ≥ 0 from the nearer centre, the other centre k further away
        let rule = CompositeRule::gauss_panels(0.0, outer_end, panels(outer_end), PANEL_ORDER);
        rule.nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&u, &w)| {
                let e = u.exp();
                w * e.powf(1.0 - own) * (k + e).powf(-other)
            })
            .sum()
    };
    // x ≥ k and x ≤ 0.
    let mut total = tail(q, p) + tail(p, q);
    if k > 0.0 {
        let half = (1.0 + 0.5 * k).ln();
        let rule = CompositeRule::gauss_panels(0.0, half, panels(half), PANEL_ORDER);
        for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
            let e = u.exp();
            let far = 2.0 + k - e;
            total += w * (e.powf(1.0 - p) * far.powf(-q) + e.powf(1.0 - q) * far.powf(-p));
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalculusProfile {
    pub ell: f64,
    pub ell_prime: f64,
    pub separations: Vec<f64>,
    pub lhs: Vec<f64>,
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    /// Log-log slope of the integral over separations in [100, 1000].
    pub tail_slope: f64,
    /// Same slope of the bound (1+|k|)^{−2ℓ′} φ_ℓ(k).
    pub bound_slope: f64,
}

/// Integral divided by (1+|a−c|)^{−2ℓ′} φ_ℓ(a−c) over a sweep of separations.
pub fn calculus_lemma_check(ell: f64, ell_prime: f64, separations: &[f64]) -> Result<CalculusProfile> {
    let bound = |k: f64| (1.0 + k.abs()).powf(-2.0 * ell_prime) * phi_ell(ell, k);
    let lhs = separations.iter().map(|&k| calculus_lemma_lhs(ell, ell_prime, k)).collect::<Result<Vec<_>>>()?;
    let ratios: Vec<f64> = lhs.iter().zip(separations).map(|(l, &k)| l / bound(k)).collect();
    let tail: Vec<f64> = (0..=20).map(|j| 100.0 * 10f64.powf(j as f64 / 20.0)).collect();
    let lx: Vec<f64> = tail.iter().map(|k| (1.0 + k).ln()).collect();
    let ly = tail.iter().map(|&k| calculus_lemma_lhs(ell, ell_prime, k).map(f64::ln)).collect::<Result<Vec<_>>>()?;
    let lb: Vec<f64> = tail.iter().map(|&k| bound(k).ln()).collect();
    Ok(CalculusProfile {
        ell,
        ell_prime,
        separations: separations.to_vec(),
        max_ratio: ratios.iter().cloned().fold(0.0, f64::max),
        lhs,
        ratios,
        tail_slope: fit_slope(&lx, &ly),
        bound_slope: fit_slope(&lx, &lb),
    })
}

// ---------------------------------------------------------------------------
// Profile transform F and the multiplier bound

/// η(y) = e^{−y} ρ(y).
pub fn eta(y: f64) -> f64 {
    crate::cutoffs::exp_profile(y)
}

/// ∫ η: the smooth part on [−1, 0] by Gauss panels plus 1 from [0, ∞).
pub fn eta_integral() -> f64 {
    let rule = CompositeRule::gauss_panels(-1.0, 0.0, 64, PANEL_ORDER);
    rule.integrate(|y| C64::new(eta(y), 0.0)).re + 1.0
}

/// η̂(k) = ∫ e^{−iky} η(y) dy: Gauss panels on [−1, 0] resolving the
/// oscillation, and 1/(1+ik) from [0, ∞) where η = e^{−y}.
pub fn eta_transform(k: f64) -> C64 {
    let panels = 64usize.max((k.abs() / std::f64::consts::TAU).ceil() as usize * 2);
    let rule = CompositeRule::gauss_panels(-1.0, 0.0, panels, PANEL_ORDER);
    let smooth = rule.integrate(|y| C64::from_polar((-y).exp() * rho(y), -k * y));
    smooth + 1.0 / C64::new(1.0, k)
}

/// F(ξ′, ξ_n, τ) = ∫ e^{−iξ_n x} η(λx) dx with λ = (τ + ξ′²)^{1/2}.
pub fn profile_transform(xi_n: f64, lambda: f64) -> C64 {
    eta_transform(xi_n / lambda) / lambda
}

/// The same integral by direct quadrature in x, without the change of scale.
pub fn profile_transform_direct(xi_n: f64, lambda: f64) -> C64 {
    let left = -1.0 / lambda;
    let right = 60.0 / lambda;
    let periods = xi_n.abs() * (right - left) / std::f64::consts::TAU;
    let panels = 2048usize.max((periods * 2.0).ceil() as usize);
    let rule = CompositeRule::gauss_panels(left, right, panels, PANEL_ORDER);
    rule.integrate(|x| C64::from_polar(eta(lambda * x), -xi_n * x))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub m: u32,
    /// Smallest c with |F| ≤ c λ^{m−1}/(|ξ_n|^m + λ^m) on the sweep.
    pub fitted_constant: f64,
    pub min_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FDecayReport {
    pub rows: Vec<DecayRow>,
    /// Log-log slope of |F| over ξ_n/λ ∈ [10, 60].
    pub decay_slope: f64,
}

/// Ratio |F| / (λ^{m−1}/(|ξ_n|^m + λ^m)) over the sweep, per m.
pub fn fdecay_check(xi_prime: f64, taus: &[f64], xi_ns: &[f64], ms: &[u32]) -> Result<FDecayReport> {
    let lambdas = taus
        .iter()
        .map(|&t| {
            let l2 = t + xi_prime * xi_prime;
            if l2 > 1.0 {
                Ok(l2.sqrt())
            } else {
                domain(format!("need τ + ξ′² > 1, got {l2}"))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(ms.len());
    for &m in ms {
        let mut hi: f64 = 0.0;
        let mut lo = f64::INFINITY;
        for &l in &lambdas {
            for &x in xi_ns {
                let f = profile_transform(x, l).norm();
                let bound = l.powi(m as i32 - 1) / (x.abs().powi(m as i32) + l.powi(m as i32));
                hi = hi.max(f / bound);
                lo = lo.min(f / bound);
            }
        }
        rows.push(DecayRow { m, fitted_constant: hi, min_ratio: lo });
    }
    let ks: Vec<f64> = (0..=12).map(|j| 10.0 * 6f64.powf(j as f64 / 12.0)).collect();
    let lx: Vec<f64> = ks.iter().map(|k| k.ln()).collect();
    let ly: Vec<f64> = ks.iter().map(|&k| eta_transform(k).norm().ln()).collect();
    Ok(FDecayReport { rows, decay_slope: fit_slope(&lx, &ly) })
}

/// Table of |η̂(k)|² on Gauss panels over [0, K].
#[derive(Clone, Debug)]
pub struct ProfileTable {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    power: Vec<f64>,
}

impl ProfileTable {
    pub fn new(cutoff: f64, panels: usize) -> Self {
        let rule = CompositeRule::gauss_panels(0.0, cutoff, panels, PANEL_ORDER);
        let power = rule.nodes.par_iter().map(|&k| eta_transform(k).norm_sqr()).collect();
        Self { nodes: rule.nodes, weights: rule.weights, power }
    }
}

/// ∫ (1+ξ′²+ξ_n²)^s (1+|τ+ξ′²+ξ_n²|)^{2b} |ξ_n F|² dξ_n, after ξ_n = λk.
pub fn multiplier_lhs(table: &ProfileTable, xi_prime: f64, lambda: f64, s: f64, b: f64) -> f64 {
    let x2 = xi_prime * xi_prime;
    let l2 = lambda * lambda;
    let sum: f64 = table
        .nodes
        .iter()
        .zip(&table.weights)
        .zip(&table.power)
        .map(|((&k, &w), &p)| {
            let k2 = k * k;
            w * (1.0 + x2 + l2 * k2).powf(s) * (1.0 + l2 + l2 * k2).powf(2.0 * b) * k2 * p
        })
        .sum();
    2.0 * lambda * sum
}

/// Ratio of the multiplier integral to (1+ξ′²+|τ+ξ′²|)^s |τ+ξ′²|^{(4b+1+2ε)/2} over (ξ′, τ) points.
pub fn multiplier_lemma_check(s: f64, b: f64, eps: f64, points: &[(f64, f64)], table: &ProfileTable) -> Result<RatioStats> {
    if !(b >= 0.0 && eps > 0.0 && s >= -1.5 - eps) {
        return domain("need b ≥ 0, ε > 0 and s ≥ −3/2 − ε");
    }
    let ratios = points
        .par_iter()
        .map(|&(xp, tau)| {
            let l2 = tau + xp * xp;
            if l2 < 1.0 {
                return domain(format!("need τ + ξ′² ≥ 1, got {l2}"));
            }
            let lhs = multiplier_lhs(table, xp, l2.sqrt(), s, b);
            let rhs = (1.0 + xp * xp + l2).powf(s) * l2.powf((4.0 * b + 1.0 + 2.0 * eps) / 2.0);
            Ok(lhs / rhs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RatioStats::from_ratios(ratios))
}

/// `count` points with ξ′ ∈ [−10, 10] and τ + ξ′² log-uniform in [1, 10⁴].
pub fn multiplier_sweep(count: usize, seed: u64) -> Vec<(f64, f64)> {
    (0..count)
        .map(|i| {
            let mut rng = member_rng(seed, i);
            let xp: f64 = rng.gen_range(-10.0..10.0);
            let l2 = 10f64.powf(rng.gen_range(0.0..4.0));
            (xp, l2 - xp * xp)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Time localisation in X^{s,b}

/// ‖ψ(t/T*) u‖_{X^{s,b′}} / (T*^{b−b′} ‖u‖_{X^{s,b}}) for each scale T*; `u`
/// is a physical field on (x…, t).
pub fn time_scaling_check(u: &SampledField, s: f64, b: f64, b_prime: f64, scales: &[f64]) -> Result<Vec<f64>> {
    if !(-0.5 < b_prime && b_prime <= b && b < 0.5) {
        return domain("need −1/2 < b′ ≤ b < 1/2");
    }
    let base = xsb_norm(&full_fourier(u)?, s, b)?;
    if base == 0.0 {
        return Ok(vec![0.0; scales.len()]);
    }
    let d = u.grid.dim();
    let t = u.grid.axes[d - 1];
    scales
        .iter()
        .map(|&scale| {
            if !(scale > 0.0 && scale <= 1.0) {
                return domain("time scales must lie in (0, 1]");
            }
            let mut v = u.clone();
            for (k, val) in v.values.iter_mut().enumerate() {
                *val *= psi(t.point(k % t.count) / scale);
            }
            Ok(xsb_norm(&full_fourier(&v)?, s, b_prime)? / (scale.powf(b - b_prime) * base))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Grid, UniformAxis};
    use crate::oracle::GaussianPacket;

    #[test]
    fn laplace_closed_forms() {
        let r = laplace_ratio_function(|x| (-x).exp(), 60.0);
        assert!((r - 2f64.sqrt()).abs() < 1e-6, "{r}");
        assert_eq!(laplace_ratio_function(|_| 0.0, 10.0), 0.0);
        let z = StepFunction { breaks: vec![0.0, 1.0], heights: vec![0.0] };
        assert_eq!(laplace_ratio_steps(&z).unwrap(), 0.0);
        // Indicator of [0,1]: ∫∫ 1/(a+b) = 2 ln 2.
        let one = StepFunction { breaks: vec![0.0, 1.0], heights: vec![1.0] };
        assert!((laplace_ratio_steps(&one).unwrap() - (2.0 * 2f64.ln()).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn step_and_quadrature_routes_agree() {
        let q = StepFunction { breaks: vec![0.5, 1.0, 3.0, 7.0], heights: vec![1.0, 0.25, 2.0] };
        let f = |x: f64| {
            if x < 0.5 {
                0.0
            } else if x < 1.0 {
                1.0
            } else if x < 3.0 {
                0.25
            } else if x < 7.0 {
                2.0
            } else {
                0.0
            }
        };
        // Gauss panels on unit breakpoints match the step breaks, so this is exact up to rounding.
        let exact = laplace_ratio_steps(&q).unwrap();
        let quad = laplace_ratio_function(f, 7.0);
        assert!((exact - quad).abs() < 1e-3 * exact, "{exact} {quad}");
    }

    #[test]
    fn laplace_ensemble_respects_sqrt_pi() {
        let stats = laplace_bound_check(&step_ensemble(200, 5)).unwrap();
        assert!(stats.max <= std::f64::consts::PI.sqrt() + 1e-3, "{}", stats.max);
        assert!(stats.max > 1.0);
    }

    #[test]
    fn calculus_integral_at_zero_separation() {
        let v = calculus_lemma_lhs(0.4, 0.4, 0.0).unwrap();
        assert!((v - 10.0 / 3.0).abs() < 1e-9, "{v}");
        let v = calculus_lemma_lhs(0.6, 0.3, 0.0).unwrap();
        // ∫ (1+|x|)^{−1.8} = 2/0.8.
        assert!((v - 2.5).abs() < 1e-9, "{v}");
        assert!(calculus_lemma_lhs(0.3, 0.4, 1.0).is_err());
        assert!(calculus_lemma_lhs(0.25, 0.25, 1.0).is_err());
    }

    #[test]
    fn calculus_integral_matches_plain_quadrature() {
        for (l, lp, k) in [(0.4, 0.4, 3.0), (0.6, 0.3, 10.0), (0.5, 0.5, 7.5)] {
            let f = |x: f64| (1.0 + x.abs()).powf(-2.0 * l) * (1.0 + (x - k).abs()).powf(-2.0 * lp);
            let mut breaks: Vec<f64> = (-4000..=4000).map(|j| j as f64 * 0.25).collect();
            breaks.push(k);
            breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
            breaks.dedup();
            let rule = CompositeRule::gauss_on_breakpoints(&breaks, PANEL_ORDER);
            let body = rule.integrate(|x| C64::new(f(x), 0.0)).re;
            let p = 2.0 * l + 2.0 * lp;
            // Tails beyond |x| = 1000 where the integrand is ≈ |x|^{−p}.
            let tail = 2.0 * 1000f64.powf(1.0 - p) / (p - 1.0);
            let got = calculus_lemma_lhs(l, lp, k).unwrap();
            assert!((got - body - tail).abs() < 2e-3 * got, "{l} {lp} {k}: {got} vs {}", body + tail);
        }
    }

    #[test]
    fn eta_integral_and_zero_frequency() {
        let total = eta_integral();
        assert!(total > 1.0 && total < 1.0 + (1f64).exp());
        assert!((eta_transform(0.0).re - total).abs() < 1e-13);
        let report = fdecay_check(0.0, &[4.0], &[0.0], &[0]).unwrap();
        assert!((report.rows[0].fitted_constant - 2.0 * total).abs() < 1e-12);
    }

    #[test]
    fn profile_transform_scaling_matches_direct_quadrature() {
        for (x, l) in [(0.0, 2.0), (3.0, 1.5), (-20.0, 5.0), (40.0, 10.0)] {
            let a = profile_transform(x, l);
            let b = profile_transform_direct(x, l);
            assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()), "{x} {l}: {a} {b}");
        }
    }

    #[test]
    fn multiplier_tail_converges() {
        let t1 = ProfileTable::new(100.0, 400);
        let t2 = ProfileTable::new(200.0, 1600);
        for (xp, l) in [(0.0, 1.0), (3.0, 10.0), (-7.0, 80.0)] {
            let a = multiplier_lhs(&t1, xp, l, 0.0, 0.0);
            let b = multiplier_lhs(&t2, xp, l, 0.0, 0.0);
            assert!((a - b).abs() < 1e-2 * b);
        }
    }

    #[test]
    fn time_scaling_ratios_stay_bounded() {
        let p = GaussianPacket { momentum: vec![1.0], ..GaussianPacket::centered(1) };
        let g = Grid::new(vec![UniformAxis::new(-16.0, 0.125, 256).unwrap(), UniformAxis::new(-4.0, 1.0 / 128.0, 1024).unwrap()])
            .unwrap();
        let u = SampledField::from_fn(g, |c| p.eval(&[c[0]], c[1]) * psi(c[1] / 3.0)).unwrap();
        let scales = [1.0, 0.5, 0.25, 0.125, 0.0625];
        let r = time_scaling_check(&u, 0.0, 0.45, 0.3, &scales).unwrap();
        assert!(r.iter().all(|v| v.is_finite() && *v > 0.0));
        let max = r.iter().cloned().fold(0.0, f64::max);
        assert!(max < 2.0 * r[0], "{r:?}");
    }
}
