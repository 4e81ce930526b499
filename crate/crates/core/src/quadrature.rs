//! Gauss–Legendre rules, composite rules, and a Filon-type kernel for
//! integrals of `e^{z s} h(s)` with complex `z`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{config, Result};

/// Base rule used on each panel of a composite quadrature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Trapezoid,
    GaussLegendreComposite,
}

/// Order of the Gauss–Legendre panels used by every composite rule here.
pub const PANEL_ORDER: usize = 8;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A one-dimensional quadrature: `∫ h ≈ Σ w_k h(x_k)`.
#[derive(Clone, Debug, Default)]
pub struct CompositeRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl CompositeRule {
    /// Gauss–Legendre panels of the given order between consecutive breakpoints.
    pub fn gauss_on_breakpoints(breaks: &[f64], order: usize) -> Self {
        let (gx, gw) = gauss_legendre(order);
        let mut nodes = Vec::with_capacity(order * breaks.len().saturating_sub(1));
        let mut weights = Vec::with_capacity(nodes.capacity());
        for pair in breaks.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (x, w) in gx.iter().zip(&gw) {
                nodes.push(mid + half * x);
                weights.push(half * w);
            }
        }
        Self { nodes, weights }
    }

    pub fn gauss_panels(a: f64, b: f64, panels: usize, order: usize) -> Self {
        let panels = panels.max(1);
        let breaks: Vec<f64> = (0..=panels)
            .map(|k| a + (b - a) * k as f64 / panels as f64)
            .collect();
        Self::gauss_on_breakpoints(&breaks, order)
    }

    pub fn trapezoid(a: f64, b: f64, count: usize) -> Self {
        let count = count.max(2);
        let h = (b - a) / (count - 1) as f64;
        let nodes = (0..count).map(|k| a + h * k as f64).collect();
        let mut weights = vec![h; count];
        weights[0] = 0.5 * h;
        weights[count - 1] = 0.5 * h;
        Self { nodes, weights }
    }

    /// Composite rule on [a, b] resolving `periods` oscillation periods with
    /// `nodes_per_period` nodes each, and at least `min_panels` panels.
    pub fn oscillatory(
        rule: Rule,
        a: f64,
        b: f64,
        periods: f64,
        nodes_per_period: usize,
        min_panels: usize,
    ) -> Self {
        let wanted = (periods.max(0.0) * nodes_per_period as f64).ceil() as usize;
        match rule {
            Rule::GaussLegendreComposite => {
                let panels = wanted.div_ceil(PANEL_ORDER).max(min_panels).max(1);
                Self::gauss_panels(a, b, panels, PANEL_ORDER)
            }
            Rule::Trapezoid => {
                let count = wanted.max(min_panels * PANEL_ORDER).max(2) + 1;
                Self::trapezoid(a, b, count)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> C64>(&self, mut f: F) -> C64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| f(x) * w)
            .sum()
    }
}

/// Moments `J_m(w) = ∫_{-1}^{1} e^{w y} y^m dy` for m = 0..order.
pub fn exp_moments(w: C64, order: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); order];
    if w.norm() <= 4.0 {
        // Only even powers of y survive the symmetric integral.
        let mut term = C64::new(1.0, 0.0);
        for k in 0..48usize {
            if k > 0 {
                term = term * w / k as f64;
            }
            for (m, slot) in out.iter_mut().enumerate() {
                if (m + k) % 2 == 0 {
                    *slot += term * (2.0 / (m + k + 1) as f64);
                }
            }
        }
    } else {
        let ep = w.exp();
        let em = (-w).exp();
        let inv = 1.0 / w;
        let mut prev = (ep - em) * inv;
        if order > 0 {
            out[0] = prev;
        }
        for m in 1..order {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            prev = (ep - em * sign) * inv - prev * (m as f64 * inv);
            out[m] = prev;
        }
    }
    out
}

/// Interpolation nodes on [-1, 1] together with the map from node values to
/// monomial coefficients of the interpolating polynomial.
#[derive(Clone, Debug)]
pub struct PanelBasis {
    pub nodes: Vec<f64>,
    to_monomial: Vec<Vec<f64>>,
}

impl PanelBasis {
    pub fn new(nodes: Vec<f64>) -> Self {
        let p = nodes.len();
        let mut to_monomial = vec![vec![0.0; p]; p];
        for j in 0..p {
            // Expand the j-th Lagrange polynomial.
            let mut poly = vec![1.0];
            let mut denom = 1.0;
            for (k, &yk) in nodes.iter().enumerate() {
                if k == j {
                    continue;
                }
                let mut next = vec![0.0; poly.len() + 1];
                for (d, &c) in poly.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= yk * c;
                }
                poly = next;
                denom *= nodes[j] - yk;
            }
            for (m, c) in poly.iter().enumerate() {
                to_monomial[m][j] = c / denom;
            }
        }
        Self { nodes, to_monomial }
    }

    pub fn gauss(order: usize) -> Self {
        Self::new(gauss_legendre(order).0)
    }

    /// Endpoints only: piecewise-linear interpolation.
    pub fn linear() -> Self {
        Self::new(vec![-1.0, 1.0])
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    fn coefficients(&self, values: &[C64], out: &mut [C64]) {
        for (m, row) in self.to_monomial.iter().enumerate() {
            out[m] = row.iter().zip(values).map(|(a, v)| v * *a).sum();
        }
    }
}

/// A piecewise-polynomial signal on equal panels of [start, start + panels·width].
/// Integrals against `e^{z s}` are exact for the interpolant, which is what
/// keeps oscillatory transforms cheap at large frequency.
#[derive(Clone, Debug)]
pub struct FilonSignal {
    start: f64,
    width: f64,
    order: usize,
    coeffs: Vec<C64>,
}

impl FilonSignal {
    /// Samples `h` at the basis nodes of each panel.
    pub fn from_sampler<F: FnMut(f64) -> C64>(
        start: f64,
        end: f64,
        panels: usize,
        basis: &PanelBasis,
        mut h: F,
    ) -> Self {
        let panels = panels.max(1);
        let width = (end - start) / panels as f64;
        let p = basis.order();
        let mut coeffs = vec![C64::new(0.0, 0.0); panels * p];
        let mut vals = vec![C64::new(0.0, 0.0); p];
        for k in 0..panels {
            let mid = start + (k as f64 + 0.5) * width;
            for (v, y) in vals.iter_mut().zip(&basis.nodes) {
                *v = h(mid + 0.5 * width * y);
            }
            basis.coefficients(&vals, &mut coeffs[k * p..(k + 1) * p]);
        }
        Self { start, width, order: p, coeffs }
    }

    /// Piecewise-linear interpolant of uniformly spaced samples.
    pub fn linear(start: f64, step: f64, values: &[C64]) -> Self {
        let panels = values.len().saturating_sub(1);
        let mut coeffs = Vec::with_capacity(2 * panels);
        for pair in values.windows(2) {
            coeffs.push((pair[0] + pair[1]) * 0.5);
            coeffs.push((pair[1] - pair[0]) * 0.5);
        }
        Self { start, width: step, order: 2, coeffs }
    }

    pub fn panels(&self) -> usize {
        self.coeffs.len() / self.order
    }

    pub fn end(&self) -> f64 {
        self.start + self.width * self.panels() as f64
    }

    /// `∫ e^{z s} h(s) ds` over the whole support.
    pub fn integrate(&self, z: C64) -> C64 {
        let p = self.order;
        let moments = exp_moments(z * (0.5 * self.width), p);
        let ratio = (z * self.width).exp();
        let mut phase = (z * (self.start + 0.5 * self.width)).exp();
        let mut acc = vec![C64::new(0.0, 0.0); p];
        for panel in self.coeffs.chunks_exact(p) {
            for (a, c) in acc.iter_mut().zip(panel) {
                *a += phase * c;
            }
            phase *= ratio;
        }
        let sum: C64 = acc.iter().zip(&moments).map(|(a, j)| a * j).sum();
        sum * (0.5 * self.width)
    }

    /// Running integrals over [start, start + k·width] for k = 0..=panels.
    pub fn cumulative(&self, z: C64) -> Vec<C64> {
        let p = self.order;
        let moments = exp_moments(z * (0.5 * self.width), p);
        let ratio = (z * self.width).exp();
        let mut phase = (z * (self.start + 0.5 * self.width)).exp();
        let mut out = Vec::with_capacity(self.panels() + 1);
        let mut total = C64::new(0.0, 0.0);
        out.push(total);
        for panel in self.coeffs.chunks_exact(p) {
            let local: C64 = panel.iter().zip(&moments).map(|(c, j)| c * j).sum();
            total += phase * local * (0.5 * self.width);
            out.push(total);
            phase *= ratio;
        }
        out
    }
}

/// `∫_α^β e^{z s} ℓ(s) ds` for the linear ℓ with ℓ(α)=fa, ℓ(β)=fb.
pub fn linear_exp_integral(z: C64, alpha: f64, beta: f64, fa: C64, fb: C64) -> C64 {
    let half = 0.5 * (beta - alpha);
    if half == 0.0 {
        return C64::new(0.0, 0.0);
    }
    let j = exp_moments(z * half, 2);
    let mid = (z * (0.5 * (alpha + beta))).exp();
    mid * half * ((fa + fb) * 0.5 * j[0] + (fb - fa) * 0.5 * j[1])
}

/// Validates a nodes-per-period setting.
pub fn check_nodes_per_period(n: usize) -> Result<()> {
    if n < 4 {
        return config(format!("node_count per period must be >= 4, got {n}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_rule_integrates_polynomials_exactly() {
        for n in [1usize, 2, 5, 8, 17] {
            let (x, w) = gauss_legendre(n);
            for deg in 0..(2 * n) {
                let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
                assert!((approx - exact).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn large_gauss_rule_weights_sum_to_two() {
        let (x, w) = gauss_legendre(1000);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-12);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    fn moment_by_quadrature(w: C64, m: usize) -> C64 {
        let rule = CompositeRule::gauss_panels(-1.0, 1.0, 64, 16);
        rule.integrate(|y| (w * y).exp() * y.powi(m as i32))
    }

    #[test]
    fn moments_agree_with_quadrature_on_both_branches() {
        for w in [
            C64::new(0.0, 0.0),
            C64::new(0.3, -1.2),
            C64::new(0.0, 3.99),
            C64::new(0.0, 4.01),
            C64::new(-6.0, 0.0),
            C64::new(1.5, 25.0),
        ] {
            let got = exp_moments(w, 8);
            for (m, g) in got.iter().enumerate() {
                let want = moment_by_quadrature(w, m);
                assert!((g - want).norm() < 1e-11 * (1.0 + want.norm()), "w={w} m={m}");
            }
        }
    }

    #[test]
    fn filon_matches_dense_quadrature_for_smooth_signal() {
        let h = |s: f64| C64::new((-s * s).exp(), s.sin());
        let sig = FilonSignal::from_sampler(0.0, 3.0, 12, &PanelBasis::gauss(8), h);
        let dense = CompositeRule::gauss_panels(0.0, 3.0, 400, 16);
        for z in [C64::new(0.0, 40.0), C64::new(-2.0, 0.0), C64::new(0.0, -0.3)] {
            let want = dense.integrate(|s| (z * s).exp() * h(s));
            let got = sig.integrate(z);
            assert!((got - want).norm() < 1e-9, "z={z}: {got} vs {want}");
            let cum = sig.cumulative(z);
            assert!((cum[cum.len() - 1] - want).norm() < 1e-9);
        }
    }

    #[test]
    fn linear_signal_integrates_hat_exactly() {
        let vals = [C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let sig = FilonSignal::linear(0.0, 1.0, &vals);
        let got = sig.integrate(C64::new(0.0, 0.0));
        assert!((got - C64::new(1.0, 0.0)).norm() < 1e-15);
        // ∫_0^1 e^{is} s ds + ∫_1^2 e^{is}(2-s) ds = (1 - e^{i})^2 · (-1)
        let z = C64::new(0.0, 1.0);
        let want = -(C64::new(1.0, 0.0) - z.exp()).powi(2);
        assert!((sig.integrate(z) - want).norm() < 1e-14);
        let part = linear_exp_integral(z, 0.0, 1.0, vals[0], vals[1]);
        assert!((sig.cumulative(z)[1] - part).norm() < 1e-15);
    }
}
