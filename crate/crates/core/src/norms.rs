//! Weighted L² norms of spectra (H^s, X^{s,b}, Y^{s,b}, B^s and its
//! homogeneous variant) and upper bounds for restriction norms.
//!
//! No 2π factors enter the norms: they are `(∫ w |F̂|²)^{1/2}` with F̂ as
//! produced by [`full_fourier`], so the X^{0,0} norm of a field is
//! `(2π)^{d/2}` times its L² norm.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::cutoffs::{psi, rho};
use crate::error::{config, domain, shape, Result};
use crate::grid::{Grid, SampledField, UniformAxis};
use crate::transforms::{full_fourier, inverse_fourier};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SobolevParams {
    pub s: f64,
    pub b: f64,
    pub b_prime: f64,
    pub n: usize,
}

/// `min{1/16, 1/8 + s/8 − n/16}`.
pub fn beta_n(s: f64, n: usize) -> f64 {
    (1.0f64 / 16.0).min(0.125 + s / 8.0 - n as f64 / 16.0)
}

impl SobolevParams {
    pub fn new(s: f64, b: f64, b_prime: f64, n: usize) -> Self {
        Self { s, b, b_prime, n }
    }

    /// b = 1/2 − β_n/2 and b′ = 1/2 − β_n.
    pub fn with_default_modulation(s: f64, n: usize) -> Self {
        let beta = beta_n(s, n);
        Self { s, b: 0.5 - 0.5 * beta, b_prime: 0.5 - beta, n }
    }

    pub fn beta_n(&self) -> f64 {
        beta_n(self.s, self.n)
    }

    /// `max{3/8, n/8 + 1/4 − s/4} < b′ ≤ b < 1/2`.
    pub fn check_trilinear(&self) -> Result<()> {
        let lower = (3.0f64 / 8.0).max(self.n as f64 / 8.0 + 0.25 - self.s / 4.0);
        if !(lower < self.b_prime && self.b_prime <= self.b && self.b < 0.5) {
            return domain(format!(
                "trilinear range needs {lower} < b' <= b < 1/2, got b' = {}, b = {}",
                self.b_prime, self.b
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormKind {
    Hs,
    Xsb,
    Ysb,
    Bs,
    BsHomogeneous,
}

impl NormKind {
    pub fn has_time_axis(self) -> bool {
        !matches!(self, NormKind::Hs)
    }
}

fn norm2(xi: &[f64]) -> f64 {
    xi.iter().map(|v| v * v).sum()
}

pub fn hs_weight(xi: &[f64], s: f64) -> f64 {
    (1.0 + norm2(xi).sqrt()).powf(2.0 * s)
}

pub fn xsb_weight(xi: &[f64], tau: f64, s: f64, b: f64) -> f64 {
    let k2 = norm2(xi);
    (1.0 + k2.sqrt()).powf(2.0 * s) * (1.0 + (tau + k2).abs()).powf(2.0 * b)
}

pub fn ysb_weight(xi: &[f64], tau: f64, s: f64, b: f64) -> f64 {
    (1.0 + tau.abs()).powf(s) * (1.0 + (tau + norm2(xi)).abs()).powf(2.0 * b)
}

pub fn bs_weight(xi_prime: &[f64], tau: f64, s: f64) -> f64 {
    let k2 = norm2(xi_prime);
    let m = (tau + k2).abs();
    (1.0 + k2 + m).powf(s) * (1.0 + m).sqrt()
}

pub fn bs_homogeneous_weight(xi_prime: &[f64], tau: f64, s: f64) -> f64 {
    let k2 = norm2(xi_prime);
    let m = (tau + k2).abs();
    (1.0 + k2 + m).powf(s) * m.sqrt()
}

/// Weight of `kind` at spectral coordinates `c` (last entry is τ for time-dependent kinds).
pub fn weight(kind: NormKind, c: &[f64], p: &SobolevParams, b: f64) -> f64 {
    match kind {
        NormKind::Hs => hs_weight(c, p.s),
        NormKind::Xsb => xsb_weight(&c[..c.len() - 1], c[c.len() - 1], p.s, b),
        NormKind::Ysb => ysb_weight(&c[..c.len() - 1], c[c.len() - 1], p.s, b),
        NormKind::Bs => bs_weight(&c[..c.len() - 1], c[c.len() - 1], p.s),
        NormKind::BsHomogeneous => bs_homogeneous_weight(&c[..c.len() - 1], c[c.len() - 1], p.s),
    }
}

/// Pairwise summation keeps reductions reproducible and accurate.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 32 {
        v.iter().sum()
    } else {
        let (a, b) = v.split_at(v.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}

/// `(Σ w |F|² · cell volume)^{1/2}`.
pub fn weighted_norm<W: Fn(&[f64]) -> f64>(spectrum: &SampledField, w: W) -> f64 {
    let mut c = vec![0.0; spectrum.grid.dim()];
    let terms: Vec<f64> = spectrum
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| {
            spectrum.grid.coords_into(k, &mut c);
            w(&c) * v.norm_sqr()
        })
        .collect();
    (pairwise_sum(&terms) * spectrum.grid.cell_volume()).sqrt()
}

fn needs_time_axis(spectrum: &SampledField) -> Result<()> {
    if spectrum.grid.dim() < 2 {
        return shape("space-time norms need at least one spatial axis and a τ axis");
    }
    Ok(())
}

pub fn hs_norm(spectrum: &SampledField, s: f64) -> f64 {
    weighted_norm(spectrum, |c| hs_weight(c, s))
}

pub fn xsb_norm(spectrum: &SampledField, s: f64, b: f64) -> Result<f64> {
    needs_time_axis(spectrum)?;
    Ok(weighted_norm(spectrum, |c| xsb_weight(&c[..c.len() - 1], c[c.len() - 1], s, b)))
}

pub fn ysb_norm(spectrum: &SampledField, s: f64, b: f64) -> Result<f64> {
    needs_time_axis(spectrum)?;
    Ok(weighted_norm(spectrum, |c| ysb_weight(&c[..c.len() - 1], c[c.len() - 1], s, b)))
}

/// For n = 1 the spectrum has the τ axis only.
pub fn bs_norm(spectrum: &SampledField, s: f64) -> Result<f64> {
    Ok(weighted_norm(spectrum, |c| bs_weight(&c[..c.len() - 1], c[c.len() - 1], s)))
}

pub fn bs_homogeneous_norm(spectrum: &SampledField, s: f64) -> Result<f64> {
    Ok(weighted_norm(spectrum, |c| bs_homogeneous_weight(&c[..c.len() - 1], c[c.len() - 1], s)))
}

/// Norm of `kind` using `params.b` for the modulation exponent.
pub fn spectrum_norm(spectrum: &SampledField, kind: NormKind, params: &SobolevParams) -> Result<f64> {
    match kind {
        NormKind::Hs => Ok(hs_norm(spectrum, params.s)),
        NormKind::Xsb => xsb_norm(spectrum, params.s, params.b),
        NormKind::Ysb => ysb_norm(spectrum, params.s, params.b),
        NormKind::Bs => bs_norm(spectrum, params.s),
        NormKind::BsHomogeneous => bs_homogeneous_norm(spectrum, params.s),
    }
}

/// How a field given on a bounded grid is extended to the whole space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtensionRecipe {
    /// Length over which spatial reflections are damped to zero by ρ.
    pub space_damping: f64,
    /// Time damping length as a fraction of the window length.
    pub time_damping_fraction: f64,
}

impl Default for ExtensionRecipe {
    fn default() -> Self {
        Self { space_damping: 1.0, time_damping_fraction: 0.5 }
    }
}

#[derive(Clone, Copy, Debug)]
struct AxisPlan {
    pad: usize,
    damping: f64,
    /// Reflect about the edge sample (true) or half a cell beyond it.
    whole_sample: [bool; 2],
}

fn plan_axis(axis: &UniformAxis, damping: f64, edges: [Option<f64>; 2]) -> AxisPlan {
    let pad = (damping / axis.step).ceil() as usize + 2;
    let tol = 1e-9 * axis.step;
    let lo = edges[0].is_some_and(|e| (axis.start - e).abs() < tol);
    let hi = edges[1].is_some_and(|e| (axis.last() - e).abs() < tol);
    AxisPlan { pad, damping, whole_sample: [lo, hi] }
}

/// Crops the time axis to the window and checks it covers it.
fn crop_to_window(field: &SampledField, window: (f64, f64)) -> Result<SampledField> {
    let d = field.grid.dim();
    let t = field.grid.axes[d - 1];
    let (w0, w1) = window;
    if !(w1 > w0) {
        return domain("empty time window");
    }
    if w0 < t.start - t.step * (1.0 + 1e-9) || w1 > t.last() + t.step * (1.0 + 1e-9) {
        return domain(format!("window ({w0}, {w1}) exceeds the grid's time range [{}, {}]", t.start, t.last()));
    }
    let eps = 1e-9 * t.step;
    let keep: Vec<usize> = (0..t.count).filter(|&k| t.point(k) >= w0 - eps && t.point(k) <= w1 + eps).collect();
    if keep.is_empty() {
        return domain("no time samples inside the window");
    }
    if keep.len() == t.count {
        return Ok(field.clone());
    }
    let first = keep[0];
    let count = keep.len();
    let mut axes = field.grid.axes.clone();
    axes[d - 1] = UniformAxis::new(t.point(first), t.step, count)?;
    let outer = field.values.len() / t.count;
    let mut values = Vec::with_capacity(outer * count);
    for o in 0..outer {
        values.extend_from_slice(&field.values[o * t.count + first..o * t.count + first + count]);
    }
    SampledField::new(Grid::new(axes)?, values)
}

fn extend_axis(field: &SampledField, axis: usize, plan: &AxisPlan, zero: bool) -> Result<SampledField> {
    let shp = field.grid.shape();
    let n = shp[axis];
    let m = n + 2 * plan.pad;
    let inner: usize = shp[axis + 1..].iter().product();
    let outer: usize = shp[..axis].iter().product();
    let ax = field.grid.axes[axis];
    let h = ax.step;
    let mut values = vec![C64::new(0.0, 0.0); outer * m * inner];
    for o in 0..outer {
        for i in 0..inner {
            let src = |k: usize| field.values[(o * n + k) * inner + i];
            let mut put = |k: usize, v: C64| values[(o * m + k) * inner + i] = v;
            for k in 0..n {
                put(plan.pad + k, src(k));
            }
            if zero {
                continue;
            }
            for j in 1..=plan.pad {
                // Lower end.
                let (mirror, dist) = if plan.whole_sample[0] {
                    (j, j as f64 * h)
                } else {
                    (j - 1, (j as f64 - 0.5) * h)
                };
                if mirror < n {
                    put(plan.pad - j, src(mirror) * rho(-dist / plan.damping));
                }
                // Upper end.
                let (mirror, dist) = if plan.whole_sample[1] {
                    (j, j as f64 * h)
                } else {
                    (j - 1, (j as f64 - 0.5) * h)
                };
                if mirror < n {
                    put(plan.pad + n - 1 + j, src(n - 1 - mirror) * rho(-dist / plan.damping));
                }
            }
        }
    }
    let mut axes = field.grid.axes.clone();
    axes[axis] = UniformAxis::new(ax.start - plan.pad as f64 * h, h, m)?;
    SampledField::new(Grid::new(axes)?, values)
}

fn plans(field: &SampledField, window: Option<(f64, f64)>, recipe: &ExtensionRecipe) -> Vec<AxisPlan> {
    let d = field.grid.dim();
    field
        .grid
        .axes
        .iter()
        .enumerate()
        .map(|(k, ax)| match window {
            Some((w0, w1)) if k == d - 1 => plan_axis(ax, recipe.time_damping_fraction * (w1 - w0), [Some(w0), Some(w1)]),
            _ => plan_axis(ax, recipe.space_damping, [Some(0.0), None]),
        })
        .collect()
}

/// The extension whose norm [`restricted_norm_upper`] reports: every axis is
/// even-reflected at both ends with the reflection damped to zero by ρ over the
/// recipe's length, and with a time window the result is multiplied by
/// ψ((t − t₀)/(2T)).
pub fn extend_field(field: &SampledField, window: Option<(f64, f64)>, recipe: &ExtensionRecipe) -> Result<SampledField> {
    let field = match window {
        Some(w) => crop_to_window(field, w)?,
        None => field.clone(),
    };
    let plans = plans(&field, window, recipe);
    let mut out = field.clone();
    for (axis, plan) in plans.iter().enumerate() {
        out = extend_axis(&out, axis, plan, false)?;
    }
    if let Some((w0, w1)) = window {
        let d = out.grid.dim();
        let t = out.grid.axes[d - 1];
        let len = w1 - w0;
        for (k, v) in out.values.iter_mut().enumerate() {
            *v *= psi((t.point(k % t.count) - w0) / (2.0 * len));
        }
    }
    Ok(out)
}

/// Zero extension onto the same padded grid [`extend_field`] uses.
pub fn zero_extend_field(field: &SampledField, window: Option<(f64, f64)>, recipe: &ExtensionRecipe) -> Result<SampledField> {
    let field = match window {
        Some(w) => crop_to_window(field, w)?,
        None => field.clone(),
    };
    let plans = plans(&field, window, recipe);
    let mut out = field;
    for (axis, plan) in plans.iter().enumerate() {
        out = extend_axis(&out, axis, plan, true)?;
    }
    Ok(out)
}

/// Norm of one concrete extension of a field given on (x′…, x_n, t) (or
/// (x′…, x_n) for H^s, (x′…, t) for the boundary norms); an upper bound for
/// the restriction norm.
pub fn restricted_norm_upper(
    field: &SampledField,
    window: (f64, f64),
    params: &SobolevParams,
    kind: NormKind,
    recipe: &ExtensionRecipe,
) -> Result<f64> {
    let w = if kind.has_time_axis() { Some(window) } else { None };
    if matches!(kind, NormKind::Xsb | NormKind::Ysb) && field.grid.dim() < 2 {
        return shape("space-time norms need a spatial axis and a time axis");
    }
    let ext = extend_field(field, w, recipe)?;
    spectrum_norm(&full_fourier(&ext)?, kind, params)
}

/// `‖ψ(t/λ) h‖_{B^s} / ‖h‖_{B^s}` for a boundary spectrum on the dual of `physical`.
pub fn bs_multiplier_check(spectrum: &SampledField, physical: &Grid, s: f64, psi_scale: f64) -> Result<f64> {
    if !(psi_scale > 0.0) {
        return config("time localizer scale must be positive");
    }
    let base = bs_norm(spectrum, s)?;
    if base == 0.0 {
        return Ok(0.0);
    }
    let mut h = inverse_fourier(spectrum, physical)?;
    let d = physical.dim();
    let t = physical.axes[d - 1];
    for (k, v) in h.values.iter_mut().enumerate() {
        *v *= psi(t.point(k % t.count) / psi_scale);
    }
    Ok(bs_norm(&full_fourier(&h)?, s)? / base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre;
    use proptest::prelude::*;

    /// Indicator of [0,1]² sampled at cell midpoints with h = 1/200.
    fn box_spectrum() -> SampledField {
        let ax = UniformAxis::midpoints(0.0, 1.0, 200).unwrap();
        let g = Grid::new(vec![ax, ax]).unwrap();
        SampledField::from_fn(g, |_| C64::new(1.0, 0.0)).unwrap()
    }

    /// (∫∫_{[0,1]²} w)^{1/2} by a 1000×1000 Gauss–Legendre tensor rule.
    fn box_oracle(w: impl Fn(f64, f64) -> f64) -> f64 {
        let (x, wt) = gauss_legendre(1000);
        let mut acc = 0.0;
        for (a, wa) in x.iter().zip(&wt) {
            for (b, wb) in x.iter().zip(&wt) {
                acc += wa * wb * w(0.5 * (a + 1.0), 0.5 * (b + 1.0));
            }
        }
        (0.25 * acc).sqrt()
    }

    #[test]
    fn beta_table() {
        assert!((beta_n(0.3, 2) - 0.0375).abs() < 1e-15);
        assert_eq!(beta_n(0.5, 2), 0.0625);
        assert_eq!(beta_n(1.0, 3), 0.0625);
    }

    #[test]
    fn hs_of_unit_indicator() {
        let g = Grid::new(vec![UniformAxis::midpoints(0.0, 1.0, 2000).unwrap()]).unwrap();
        let f = SampledField::from_fn(g, |_| C64::new(1.0, 0.0)).unwrap();
        assert!((hs_norm(&f, 1.0) - (7.0f64 / 3.0).sqrt()).abs() < 1e-4 * (7.0f64 / 3.0).sqrt());
        assert!((hs_norm(&f, 0.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn box_examples_match_quadrature_oracle() {
        let f = box_spectrum();
        let x = xsb_norm(&f, 1.0, 0.25).unwrap();
        let want = box_oracle(|xi, tau| xsb_weight(&[xi], tau, 1.0, 0.25));
        assert!((x - want).abs() < 1e-4, "{x} vs {want}");
        let y = ysb_norm(&f, 1.0, 0.25).unwrap();
        let want = box_oracle(|xi, tau| ysb_weight(&[xi], tau, 1.0, 0.25));
        assert!((y - want).abs() < 1e-4, "{y} vs {want}");
        let b = bs_norm(&f, 0.0).unwrap();
        let want = box_oracle(|xi, tau| bs_weight(&[xi], tau, 0.0));
        assert!((b - want).abs() < 1e-4, "{b} vs {want}");
    }

    #[test]
    fn zero_and_l2_reductions() {
        let f = box_spectrum();
        let z = SampledField::zeros(f.grid.clone());
        for kind in [NormKind::Hs, NormKind::Xsb, NormKind::Ysb, NormKind::Bs, NormKind::BsHomogeneous] {
            assert_eq!(spectrum_norm(&z, kind, &SobolevParams::new(0.7, 0.3, 0.3, 1)).unwrap(), 0.0);
        }
        assert!((xsb_norm(&f, 0.0, 0.0).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(ysb_norm(&f, 0.0, 0.3).unwrap(), xsb_norm(&f, 0.0, 0.3).unwrap());
    }

    #[test]
    fn characteristic_set_has_zero_homogeneous_norm() {
        // τ = −ξ′² lands on grid points when both axes share the lattice of squares.
        let xi = UniformAxis::new(-2.0, 1.0, 5).unwrap();
        let tau = UniformAxis::new(-4.0, 1.0, 5).unwrap();
        let g = Grid::new(vec![xi, tau]).unwrap();
        let f = SampledField::from_fn(g, |c| {
            if (c[1] + c[0] * c[0]).abs() < 1e-12 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }
        })
        .unwrap();
        assert_eq!(bs_homogeneous_norm(&f, 0.5).unwrap(), 0.0);
        assert!(bs_norm(&f, 0.5).unwrap() > 0.0);
    }

    fn bump_field(n_x: usize, n_t: usize) -> SampledField {
        let g = Grid::new(vec![
            UniformAxis::linspace(0.0, 6.0, n_x).unwrap(),
            UniformAxis::midpoints(0.0, 0.4, n_t).unwrap(),
        ])
        .unwrap();
        // Supported in x ∈ (2, 4), t ∈ (0.1, 0.3): farther than every damping length from the edges.
        SampledField::from_fn(g, |c| C64::new(psi(c[0] - 3.0) * psi((c[1] - 0.2) / 0.1), 0.0)).unwrap()
    }

    #[test]
    fn interior_field_norm_equals_plain_norm() {
        let f = bump_field(61, 40);
        let recipe = ExtensionRecipe { space_damping: 1.0, time_damping_fraction: 0.2 };
        let p = SobolevParams::new(0.5, 0.3, 0.3, 1);
        let up = restricted_norm_upper(&f, (0.0, 0.4), &p, NormKind::Xsb, &recipe).unwrap();
        let plain = xsb_norm(&full_fourier(&zero_extend_field(&f, Some((0.0, 0.4)), &recipe).unwrap()).unwrap(), 0.5, 0.3).unwrap();
        assert!((up - plain).abs() <= 1e-10 * plain);
        let z = SampledField::zeros(f.grid.clone());
        assert_eq!(restricted_norm_upper(&z, (0.0, 0.4), &p, NormKind::Xsb, &recipe).unwrap(), 0.0);
    }

    #[test]
    fn window_beyond_grid_is_rejected() {
        let f = bump_field(31, 20);
        let p = SobolevParams::new(0.0, 0.0, 0.0, 1);
        assert!(restricted_norm_upper(&f, (0.0, 0.6), &p, NormKind::Xsb, &ExtensionRecipe::default()).is_err());
    }

    #[test]
    fn extensions_never_undercut_the_restriction_at_zero_regularity() {
        // At s = b = 0 the restriction norm is (2π)^{d/2} times the L² norm over the domain.
        let g = Grid::new(vec![
            UniformAxis::linspace(0.0, 6.0, 61).unwrap(),
            UniformAxis::midpoints(0.0, 0.4, 32).unwrap(),
        ])
        .unwrap();
        let f = SampledField::from_fn(g, |c| C64::new((-(c[0] - 0.5).powi(2) - 4.0 * c[1]).exp(), c[1])).unwrap();
        let p = SobolevParams::new(0.0, 0.0, 0.0, 1);
        let w = Some((0.0, 0.4));
        let base = ExtensionRecipe::default();
        let floor = {
            let z = zero_extend_field(&f, w, &base).unwrap();
            xsb_norm(&full_fourier(&z).unwrap(), 0.0, 0.0).unwrap()
        };
        let domain_l2 = 2.0 * std::f64::consts::PI * f.l2_norm();
        assert!((floor - domain_l2).abs() < 1e-10 * domain_l2);
        for recipe in [
            base,
            ExtensionRecipe { space_damping: 0.5, time_damping_fraction: 0.25 },
            ExtensionRecipe { space_damping: 2.0, time_damping_fraction: 0.5 },
            ExtensionRecipe { space_damping: 1.0, time_damping_fraction: 1.0 },
        ] {
            let v = restricted_norm_upper(&f, (0.0, 0.4), &p, NormKind::Xsb, &recipe).unwrap();
            assert!(v >= floor - 1e-6, "{recipe:?}: {v} < {floor}");
        }
    }

    #[test]
    fn multiplier_ratio_is_one_when_localizer_is_one_on_support() {
        let g = Grid::new(vec![
            UniformAxis::new(-8.0, 0.25, 64).unwrap(),
            UniformAxis::new(-4.0, 0.125, 64).unwrap(),
        ])
        .unwrap();
        let h = SampledField::from_fn(g.clone(), |c| C64::new((-c[0] * c[0]).exp() * psi(c[1] / 0.5), 0.0)).unwrap();
        let spec = full_fourier(&h).unwrap();
        let r = bs_multiplier_check(&spec, &g, 0.5, 2.0).unwrap();
        assert!((r - 1.0).abs() < 1e-6, "{r}");
        assert_eq!(bs_multiplier_check(&SampledField::zeros(spec.grid.clone()), &g, 0.5, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn weight_equivalence_bounds() {
        for (k, t) in [(0.0, 0.0), (3.0, -9.0), (0.5, 10.0), (7.0, 100.0), (2.0, -1.0)] {
            for s in [-1.0, -0.25, 0.3, 1.5] {
                let a: f64 = k * k + f64::abs(t + k * k);
                let w1 = (1.0 + a.sqrt()).powf(2.0 * s);
                let w2 = (1.0 + a).powf(s);
                let r = w1 / w2;
                let bound = 2f64.powf(s.abs());
                assert!(r >= 1.0 / bound - 1e-12 && r <= bound + 1e-12, "k={k} t={t} s={s} r={r}");
            }
        }
    }

    #[test]
    fn multiplier_ratio_is_stable_over_random_boundary_data() {
        use rand::{Rng, SeedableRng};
        let g = Grid::new(vec![UniformAxis::new(-8.0, 0.5, 32).unwrap(), UniformAxis::new(-4.0, 0.125, 64).unwrap()]).unwrap();
        let dual = g.dual();
        let ratio = |i: u64| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1000 + i);
            // Random band-limited spectrum: central quarter of each dual axis.
            let spec = SampledField::from_fn(dual.clone(), |c| {
                let inside = c[0].abs() <= 0.25 * dual.axes[0].last() && c[1].abs() <= 0.25 * dual.axes[1].last();
                if inside { C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) } else { C64::new(0.0, 0.0) }
            })
            .unwrap();
            bs_multiplier_check(&spec, &g, 0.5, 1.0).unwrap()
        };
        let r: Vec<f64> = (0..200).map(ratio).collect();
        let max100 = r[..100].iter().cloned().fold(0.0, f64::max);
        let max200 = r.iter().cloned().fold(0.0, f64::max);
        assert!(r.iter().all(|v| v.is_finite() && *v > 0.0));
        assert!((max200 - max100).abs() <= 0.1 * max100, "{max100} {max200}");
    }

    proptest! {
        #[test]
        fn norms_are_homogeneous(scale in 0.01f64..100.0, s in -1.0f64..2.0, b in 0.0f64..0.5) {
            let f = box_spectrum();
            let g = f.scale(C64::new(scale, 0.0));
            let r = xsb_norm(&g, s, b).unwrap() / xsb_norm(&f, s, b).unwrap();
            prop_assert!((r - scale).abs() < 1e-12 * scale);
            let r = bs_norm(&g, s).unwrap() / bs_norm(&f, s).unwrap();
            prop_assert!((r - scale).abs() < 1e-12 * scale);
        }

        #[test]
        fn norms_increase_with_regularity(s in -1.0f64..2.0, ds in 0.0f64..1.0, b in -0.5f64..0.5, db in 0.0f64..0.5) {
            let f = box_spectrum();
            let (s2, b2) = (s + ds, b + db);
            prop_assert!(xsb_norm(&f, s, b).unwrap() <= xsb_norm(&f, s2, b2).unwrap() * (1.0 + 1e-12));
            prop_assert!(ysb_norm(&f, s, b).unwrap() <= ysb_norm(&f, s2, b2).unwrap() * (1.0 + 1e-12));
            prop_assert!(bs_norm(&f, s).unwrap() <= bs_norm(&f, s2).unwrap() * (1.0 + 1e-12));
            prop_assert!(hs_norm(&f, s) <= hs_norm(&f, s2) * (1.0 + 1e-12));
        }

        #[test]
        fn homogeneous_boundary_norm_never_exceeds_inhomogeneous(s in -1.0f64..2.0, shift in -3.0f64..3.0) {
            let ax = UniformAxis::midpoints(-2.0, 2.0, 40).unwrap();
            let g = Grid::new(vec![ax, ax]).unwrap();
            let f = SampledField::from_fn(g, |c| C64::new((-(c[0] - shift).powi(2)).exp(), c[1])).unwrap();
            prop_assert!(bs_homogeneous_norm(&f, s).unwrap() <= bs_norm(&f, s).unwrap());
        }
    }
}
