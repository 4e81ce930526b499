//! Half-line Fourier, boundary time, and forcing transforms evaluated from
//! samplers, plus the discrete Fourier transform of gridded fields.
//!
//! DFT normalization: the forward transform is the plain sum times the grid
//! spacing (with the phase of the grid offset), the inverse carries 1/(2π)
//! per dimension. Consequently `Σ|F̂|² Δξ = 2π Σ|f|² Δx` on every axis.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{config, domain, finite_or, shape, Result};
use crate::grid::{Grid, SampledField};
use crate::quadrature::{check_nodes_per_period, CompositeRule, Rule};

/// Initial data `u₀(x′, x_n)`.
pub type SpatialSampler = Arc<dyn Fn(&[f64], f64) -> C64 + Send + Sync>;
/// Boundary data `g₀(x′, t)`.
pub type BoundarySampler = Arc<dyn Fn(&[f64], f64) -> C64 + Send + Sync>;
/// Forcing `f(x′, x_n, t)`.
pub type ForcingSampler = Arc<dyn Fn(&[f64], f64, f64) -> C64 + Send + Sync>;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Nodes per period of the fastest phase.
    pub nodes_per_period: usize,
    pub rule: Rule,
    /// Spatial truncation: x_n ∈ (0, L), x′ ∈ (−L, L)^{n−1}.
    pub length: f64,
    /// Time horizon.
    pub time: f64,
    /// Minimum panel density resolving the data itself, per unit length or time.
    pub panels_per_unit: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            nodes_per_period: 8,
            rule: Rule::GaussLegendreComposite,
            length: 10.0,
            time: 0.4,
            panels_per_unit: 4.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        check_nodes_per_period(self.nodes_per_period)?;
        if !(self.length > 0.0 && self.time > 0.0 && self.panels_per_unit > 0.0) {
            return config("truncation length, time and panel density must be positive");
        }
        Ok(())
    }

    /// Additionally enforces the standing `T < 1/2` restriction of the IBVP solver.
    pub fn validate_for_solver(&self) -> Result<()> {
        self.validate()?;
        if self.time >= 0.5 {
            return config(format!("horizon T = {} must be < 1/2", self.time));
        }
        Ok(())
    }

    fn rule_on(&self, a: f64, b: f64, angular_rate: f64) -> CompositeRule {
        let periods = angular_rate.abs() * (b - a) / TWO_PI;
        let min_panels = ((b - a) * self.panels_per_unit).ceil() as usize;
        CompositeRule::oscillatory(self.rule, a, b, periods, self.nodes_per_period, min_panels.max(1))
    }
}

/// Tensor rule over (−L, L)^{n−1} with the weights already multiplied by e^{−iξ′·x′}.
pub(crate) fn transverse_rule(xi_prime: &[f64], q: &QuadratureConfig) -> Vec<(Vec<f64>, C64)> {
    let mut out = vec![(Vec::new(), C64::new(1.0, 0.0))];
    for &k in xi_prime {
        let rule = q.rule_on(-q.length, q.length, k);
        let mut next = Vec::with_capacity(out.len() * rule.len());
        for (pt, w) in &out {
            for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
                let mut p = pt.clone();
                p.push(x);
                next.push((p, w * C64::from_polar(wx, -k * x)));
            }
        }
        out = next;
    }
    out
}

/// `∫₀^L ∫ e^{−iξ′·x′ − i x_n ξ_n} u₀ dx′ dx_n`, valid for Im ξ_n ≤ 0.
pub fn half_line_fourier(
    u0: &dyn Fn(&[f64], f64) -> C64,
    xi_prime: &[f64],
    xi_n: C64,
    q: &QuadratureConfig,
) -> Result<C64> {
    q.validate()?;
    if xi_n.im > 0.0 {
        return domain(format!("half-line transform needs Im ξ_n <= 0, got {xi_n}"));
    }
    let outer = transverse_rule(xi_prime, q);
    let rule = q.rule_on(0.0, q.length, xi_n.re);
    let minus_i = C64::new(0.0, -1.0);
    let mut acc = C64::new(0.0, 0.0);
    for (xp, wp) in &outer {
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let v = finite_or(u0(xp, x), "initial data")?;
            acc += wp * w * (minus_i * xi_n * x).exp() * v;
        }
    }
    Ok(acc)
}

/// `∫₀^T ∫ e^{−iτt − iξ′·x′} g₀ dx′ dt` for complex τ.
pub fn time_transform(
    g0: &dyn Fn(&[f64], f64) -> C64,
    xi_prime: &[f64],
    tau: C64,
    horizon: f64,
    q: &QuadratureConfig,
) -> Result<C64> {
    q.validate()?;
    if !(horizon > 0.0) {
        return domain("time transform needs T > 0");
    }
    let outer = transverse_rule(xi_prime, q);
    let rule = q.rule_on(0.0, horizon, tau.re);
    let minus_i = C64::new(0.0, -1.0);
    let mut acc = C64::new(0.0, 0.0);
    for (xp, wp) in &outer {
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            let v = finite_or(g0(xp, t), "boundary data")?;
            acc += wp * w * (minus_i * tau * t).exp() * v;
        }
    }
    Ok(acc)
}

/// `F̃(ξ′, ξ_n, t) = ∫₀^t e^{i(|ξ′|²+ξ_n²)s} ∫₀^L ∫ e^{−iξ′·x′−iξ_n x_n} f ds`.
pub fn forcing_transform(
    f: &dyn Fn(&[f64], f64, f64) -> C64,
    xi_prime: &[f64],
    xi_n: C64,
    t: f64,
    q: &QuadratureConfig,
) -> Result<C64> {
    q.validate()?;
    if xi_n.im > 0.0 {
        return domain(format!("forcing transform needs Im ξ_n <= 0, got {xi_n}"));
    }
    if !(t > 0.0 && t < q.time) {
        return domain(format!("forcing transform needs 0 < t < T, got t = {t}"));
    }
    let k2: f64 = xi_prime.iter().map(|k| k * k).sum();
    let freq = C64::new(k2, 0.0) + xi_n * xi_n;
    let srule = q.rule_on(0.0, t, freq.re);
    let i = C64::new(0.0, 1.0);
    let mut acc = C64::new(0.0, 0.0);
    for (&s, &w) in srule.nodes.iter().zip(&srule.weights) {
        let inner = half_line_fourier(&|xp: &[f64], x: f64| f(xp, x, s), xi_prime, xi_n, q)?;
        acc += w * (i * freq * s).exp() * inner;
    }
    Ok(acc)
}

/// `∫_L^{2L} |u₀(0, x_n)| dx_n`: an estimate of the mass the truncation at L drops.
pub fn truncation_tail(u0: &dyn Fn(&[f64], f64) -> C64, xi_prime_dim: usize, q: &QuadratureConfig) -> f64 {
    let rule = q.rule_on(q.length, 2.0 * q.length, 0.0);
    let origin = vec![0.0; xi_prime_dim];
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| w * u0(&origin, x).norm())
        .sum()
}

pub(crate) fn transform_axis(values: &mut [C64], shape: &[usize], axis: usize, inverse: bool, planner: &mut FftPlanner<f64>) {
    let n = shape[axis];
    let inner: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
    let fft = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
    let mut line = vec![C64::new(0.0, 0.0); n];
    for o in 0..outer {
        for i in 0..inner {
            let base = o * n * inner + i;
            for (k, slot) in line.iter_mut().enumerate() {
                *slot = values[base + k * inner];
            }
            fft.process(&mut line);
            for (k, v) in line.iter().enumerate() {
                values[base + k * inner] = *v;
            }
        }
    }
}

/// Unnormalised n-dimensional DFT in place (inverse without the 1/N factor).
pub(crate) fn fft_nd(values: &mut [C64], shape: &[usize], inverse: bool) {
    let mut planner = FftPlanner::new();
    for axis in 0..shape.len() {
        transform_axis(values, shape, axis, inverse, &mut planner);
    }
}

/// Forward transform `F̂(ξ) = Σ f(x) e^{−iξ·x} Πh` onto the centred dual grid.
pub fn full_fourier(field: &SampledField) -> Result<SampledField> {
    let grid = &field.grid;
    let shp = grid.shape();
    let mut vals = field.values.clone();
    let mut planner = FftPlanner::new();
    for (d, axis) in grid.axes.iter().enumerate() {
        let n = axis.count;
        let c = n / 2;
        // Reorder so that index k holds DFT bin (k − c) mod n, then apply spacing and offset phase.
        transform_axis(&mut vals, &shp, d, false, &mut planner);
        permute_axis(&mut vals, &shp, d, c);
        let dual = axis.dual();
        let phases: Vec<C64> = (0..n)
            .map(|k| C64::from_polar(axis.step, -dual.point(k) * axis.start))
            .collect();
        scale_axis(&mut vals, &shp, d, &phases);
    }
    SampledField::new(grid.dual(), vals)
}

/// Inverse of [`full_fourier`] back onto `physical`, whose dual must match the spectrum grid.
pub fn inverse_fourier(spectrum: &SampledField, physical: &Grid) -> Result<SampledField> {
    let dual = physical.dual();
    if dual.axes.len() != spectrum.grid.axes.len()
        || dual
            .axes
            .iter()
            .zip(&spectrum.grid.axes)
            .any(|(a, b)| a.count != b.count || (a.step - b.step).abs() > 1e-12 * a.step || (a.start - b.start).abs() > 1e-9 * a.step)
    {
        return shape("spectrum grid is not the dual of the requested physical grid");
    }
    let shp = physical.shape();
    let mut vals = spectrum.values.clone();
    let mut planner = FftPlanner::new();
    for (d, axis) in physical.axes.iter().enumerate() {
        let n = axis.count;
        let c = n / 2;
        let dual_axis = axis.dual();
        let norm = dual_axis.step / TWO_PI;
        let phases: Vec<C64> = (0..n)
            .map(|k| C64::from_polar(norm, dual_axis.point(k) * axis.start))
            .collect();
        scale_axis(&mut vals, &shp, d, &phases);
        permute_axis(&mut vals, &shp, d, n - c);
        transform_axis(&mut vals, &shp, d, true, &mut planner);
    }
    SampledField::new(physical.clone(), vals)
}

/// Cyclic shift along an axis: new[(k + shift) mod n] = old[k].
fn permute_axis(values: &mut [C64], shape: &[usize], axis: usize, shift: usize) {
    let n = shape[axis];
    let inner: usize = shape[axis + 1..].iter().product();
    let outer: usize = shape[..axis].iter().product();
    let mut line = vec![C64::new(0.0, 0.0); n];
    for o in 0..outer {
        for i in 0..inner {
            let base = o * n * inner + i;
            for k in 0..n {
                line[(k + shift) % n] = values[base + k * inner];
            }
            for (k, v) in line.iter().enumerate() {
                values[base + k * inner] = *v;
            }
        }
    }
}

fn scale_axis(values: &mut [C64], shape: &[usize], axis: usize, factors: &[C64]) {
    let n = shape[axis];
    let inner: usize = shape[axis + 1..].iter().product();
    for (flat, v) in values.iter_mut().enumerate() {
        *v *= factors[(flat / inner) % n];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::UniformAxis;

    fn q(length: f64) -> QuadratureConfig {
        QuadratureConfig { length, ..Default::default() }
    }

    #[test]
    fn exponential_half_line_transform() {
        let u0 = |_: &[f64], x: f64| C64::new((-x).exp(), 0.0);
        for xi in [0.0, 0.7, -3.0, 25.0] {
            let got = half_line_fourier(&u0, &[], C64::new(xi, 0.0), &q(40.0)).unwrap();
            let want = 1.0 / C64::new(1.0, xi);
            assert!((got - want).norm() / want.norm() < 1e-6, "xi={xi}");
        }
    }

    #[test]
    fn indicator_transform_at_zero_frequency() {
        let u0 = |_: &[f64], x: f64| C64::new(if x <= 1.0 { 1.0 } else { 0.0 }, 0.0);
        // Breakpoint at x = 1 lands on a panel edge with 4 panels per unit.
        let got = half_line_fourier(&u0, &[], C64::new(0.0, 0.0), &q(4.0)).unwrap();
        assert!((got - 1.0).norm() < 1e-12);
    }

    #[test]
    fn upper_half_plane_frequency_is_rejected() {
        let u0 = |_: &[f64], _: f64| C64::new(1.0, 0.0);
        assert!(half_line_fourier(&u0, &[], C64::new(0.0, 0.1), &q(1.0)).is_err());
    }

    #[test]
    fn constant_boundary_time_transform() {
        let g0 = |_: &[f64], _: f64| C64::new(1.0, 0.0);
        let qq = q(1.0);
        let at_zero = time_transform(&g0, &[], C64::new(0.0, 0.0), 0.3, &qq).unwrap();
        assert!((at_zero - 0.3).norm() < 1e-14);
        let got = time_transform(&g0, &[], C64::new(8.0, 0.0), 0.25, &qq).unwrap();
        let i = C64::new(0.0, 1.0);
        let want = (1.0 - (-2.0 * i).exp()) / (8.0 * i);
        assert!((got - want).norm() / want.norm() < 1e-8);
    }

    #[test]
    fn separable_forcing_transform() {
        let f = |_: &[f64], x: f64, _: f64| C64::new((-x).exp(), 0.0);
        let qq = QuadratureConfig { length: 40.0, time: 0.45, ..Default::default() };
        let i = C64::new(0.0, 1.0);
        for xi in [0.5, 2.0, 7.0] {
            let t = 0.3;
            let got = forcing_transform(&f, &[], C64::new(xi, 0.0), t, &qq).unwrap();
            let want = ((i * xi * xi * t).exp() - 1.0) / (i * xi * xi) / C64::new(1.0, xi);
            assert!((got - want).norm() / want.norm() < 1e-6, "xi={xi}");
        }
        let tiny = forcing_transform(&f, &[], C64::new(1.0, 0.0), 1e-12, &qq).unwrap();
        assert!(tiny.norm() < 1e-11);
        assert!(forcing_transform(&f, &[], C64::new(1.0, 0.0), 0.45, &qq).is_err());
    }

    #[test]
    fn doubling_truncation_changes_exponential_transform_by_less_than_tail() {
        let u0 = |_: &[f64], x: f64| C64::new((-x).exp(), 0.0);
        let a = half_line_fourier(&u0, &[], C64::new(1.3, 0.0), &q(12.0)).unwrap();
        let b = half_line_fourier(&u0, &[], C64::new(1.3, 0.0), &q(24.0)).unwrap();
        assert!((a - b).norm() < (-12.0f64).exp());
    }

    #[test]
    fn two_dimensional_transform_of_separable_gaussian() {
        // ∫ e^{−ikx} e^{−x²} dx = √π e^{−k²/4}; ∫₀^∞ e^{−x} e^{−iξx} = 1/(1+iξ).
        let u0 = |xp: &[f64], x: f64| C64::new((-xp[0] * xp[0] - x).exp(), 0.0);
        let got = half_line_fourier(&u0, &[1.5], C64::new(2.0, -0.5), &q(30.0)).unwrap();
        let want = std::f64::consts::PI.sqrt() * (-1.5f64 * 1.5 / 4.0).exp() / (1.0 + C64::new(0.0, 1.0) * C64::new(2.0, -0.5));
        assert!((got - want).norm() / want.norm() < 1e-8);
    }

    fn gaussian_field(nx: usize, nt: usize) -> SampledField {
        let g = Grid::new(vec![
            UniformAxis::new(-6.0, 12.0 / nx as f64, nx).unwrap(),
            UniformAxis::new(-5.5, 11.0 / nt as f64, nt).unwrap(),
        ])
        .unwrap();
        SampledField::from_fn(g, |p| C64::new((-p[0] * p[0] - p[1] * p[1]).exp(), 0.0)).unwrap()
    }

    #[test]
    fn gaussian_round_trip() {
        let f = gaussian_field(64, 49);
        let back = inverse_fourier(&full_fourier(&f).unwrap(), &f.grid).unwrap();
        assert!(back.relative_l2_error(&f).unwrap() < 1e-10);
    }

    #[test]
    fn forward_transform_samples_continuous_transform() {
        // ∫∫ e^{−iξx − iτt} e^{−x²−t²} = π e^{−(ξ²+τ²)/4}
        let f = gaussian_field(64, 64);
        let spec = full_fourier(&f).unwrap();
        let mut k = vec![0.0; 2];
        for (idx, v) in spec.values.iter().enumerate() {
            spec.grid.coords_into(idx, &mut k);
            let want = std::f64::consts::PI * (-(k[0] * k[0] + k[1] * k[1]) / 4.0).exp();
            assert!((v - want).norm() < 1e-10, "at {k:?}");
        }
    }

    #[test]
    fn plancherel_constant() {
        let f = gaussian_field(32, 27);
        let spec = full_fourier(&f).unwrap();
        let lhs = spec.l2_norm().powi(2);
        let rhs = (TWO_PI).powi(2) * f.l2_norm().powi(2);
        assert!((lhs - rhs).abs() < 1e-12 * rhs);
    }

    #[test]
    fn impulse_has_flat_modulus_spectrum() {
        let g = Grid::new(vec![UniformAxis::new(-1.0, 0.25, 8).unwrap()]).unwrap();
        let mut vals = vec![C64::new(0.0, 0.0); 8];
        vals[4] = C64::new(1.0, 0.0);
        let spec = full_fourier(&SampledField::new(g, vals).unwrap()).unwrap();
        assert!(spec.values.iter().all(|v| (v.norm() - 0.25).abs() < 1e-15));
        let z = full_fourier(&SampledField::zeros(spec.grid.clone())).unwrap();
        assert_eq!(z.max_abs(), 0.0);
    }

    #[test]
    fn inverse_rejects_mismatched_grid() {
        let f = gaussian_field(16, 16);
        let spec = full_fourier(&f).unwrap();
        let other = gaussian_field(16, 15).grid;
        assert!(inverse_fourier(&spec, &other).is_err());
    }
}
