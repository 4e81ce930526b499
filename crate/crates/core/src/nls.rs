//! Picard iteration for `iu_t + Δu ± |u|²u = 0` on the half-space: each step
//! solves the forced linear problem with forcing `∓|u|²u` of the previous
//! iterate, tabulated on the solution grid.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{config, domain, FokasError, Result};
use crate::fokas::{solve_on_grid, Forcing, LinearSolverConfig, ProblemData};
use crate::grid::{Grid, SampledField, UniformAxis};
use crate::norms::{restricted_norm_upper, ExtensionRecipe, NormKind, SobolevParams};

pub use crate::norms::beta_n;

/// Sign σ of the nonlinearity in `iu_t + Δu + σ|u|²u = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum SmallnessGate {
    /// Report the data size and never stop.
    Warn,
    /// Refuse data with ‖u₀‖_{H^s} + ‖g₀‖_{B^s} > 1/(32C²).
    Strict { c: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub params: SobolevParams,
    pub max_iterations: usize,
    /// Stop once ‖u_{k+1} − u_k‖ / ‖u_{k+1}‖ falls below this.
    pub fixed_point_tolerance: f64,
    /// Radius of the ball the iterates are expected to stay in; reported only.
    pub ball_radius: Option<f64>,
    pub contraction_monitor: bool,
    pub sign: Sign,
    pub smallness: SmallnessGate,
    pub linear: LinearSolverConfig,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            params: SobolevParams::with_default_modulation(0.3, 2),
            max_iterations: 30,
            fixed_point_tolerance: 1e-8,
            ball_radius: None,
            contraction_monitor: true,
            sign: Sign::Plus,
            smallness: SmallnessGate::Warn,
            linear: LinearSolverConfig::default(),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return config("max_iterations must be at least 1");
        }
        if !(self.fixed_point_tolerance > 0.0) {
            return config("fixed-point tolerance must be positive");
        }
        if let SmallnessGate::Strict { c } = self.smallness {
            if !(c > 0.0) {
                return config("smallness constant C must be positive");
            }
        }
        Ok(())
    }
}

/// Space-time grid for the iteration: spatial axes (x′…, x_n) and times
/// Δt, 2Δt, …, mΔt < T.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NlsGrid {
    pub spatial: Vec<UniformAxis>,
    pub dt: f64,
    pub steps: usize,
}

impl NlsGrid {
    pub fn new(spatial: Vec<UniformAxis>, dt: f64, steps: usize) -> Self {
        Self { spatial, dt, steps }
    }

    fn validate(&self, data: &ProblemData) -> Result<()> {
        if self.spatial.len() != data.n {
            return config(format!("grid has {} spatial axes, expected {}", self.spatial.len(), data.n));
        }
        if !(self.dt > 0.0) || self.steps == 0 {
            return config("time grid needs dt > 0 and at least one step");
        }
        if self.dt * self.steps as f64 >= data.time {
            return domain("last output time must stay below T");
        }
        if self.spatial[data.n - 1].start.abs() > 1e-12 {
            return config("x_n axis must start at the boundary x_n = 0");
        }
        Ok(())
    }

    /// Output grid: times Δt..mΔt.
    pub fn output(&self) -> Result<Grid> {
        let mut axes = self.spatial.clone();
        axes.push(UniformAxis::new(self.dt, self.dt, self.steps)?);
        Grid::new(axes)
    }

    /// Iterate grid: times 0..mΔt.
    pub fn field(&self) -> Result<Grid> {
        let mut axes = self.spatial.clone();
        axes.push(UniformAxis::new(0.0, self.dt, self.steps + 1)?);
        Grid::new(axes)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompatibilityReport {
    pub orders: Vec<usize>,
    pub residuals: Vec<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompatibilityOptions {
    pub tolerance: f64,
    /// Tangential points |x′_j| ≤ extent at which the residual is sampled.
    pub x_prime_extent: f64,
    pub x_prime_samples: usize,
    /// Finite-difference step for the order-1 condition.
    pub fd_step: f64,
}

impl Default for CompatibilityOptions {
    fn default() -> Self {
        Self { tolerance: 1e-6, x_prime_extent: 6.0, x_prime_samples: 25, fd_step: 1e-3 }
    }
}

/// Orders k with k < (2s−1)/4.
pub fn compatibility_orders(s: f64) -> Result<Vec<usize>> {
    let q = (2.0 * s - 1.0) / 4.0;
    if q >= 0.0 && (q - q.round()).abs() < 1e-12 {
        return Err(FokasError::UnsupportedRegularity { s });
    }
    Ok(if q <= 0.0 { Vec::new() } else { (0..=(q.ceil() as usize - 1)).collect() })
}

fn x_prime_points(n: usize, opts: &CompatibilityOptions) -> Vec<Vec<f64>> {
    let m = n - 1;
    if m == 0 {
        return vec![Vec::new()];
    }
    let ax: Vec<f64> = (0..opts.x_prime_samples)
        .map(|k| -opts.x_prime_extent + 2.0 * opts.x_prime_extent * k as f64 / (opts.x_prime_samples - 1).max(1) as f64)
        .collect();
    let mut pts = vec![Vec::new()];
    for _ in 0..m {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<f64>| {
                ax.iter().map(move |&a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    pts
}

/// Residuals of the compatibility conditions of orders k < (2s−1)/4 (k ≤ 1 supported).
pub fn check_compatibility(data: &ProblemData, s: f64, sign: Sign, opts: &CompatibilityOptions) -> Result<CompatibilityReport> {
    let orders = compatibility_orders(s)?;
    if orders.iter().any(|&k| k > 1) {
        return config("compatibility of order k >= 2 is not evaluated");
    }
    let pts = x_prime_points(data.n, opts);
    let h = opts.fd_step;
    let mut residuals = Vec::with_capacity(orders.len());
    for &k in &orders {
        let mut worst: f64 = 0.0;
        for xp in &pts {
            let r = if k == 0 {
                ((data.g0)(xp, 0.0) - (data.u0)(xp, 0.0)).norm()
            } else {
                let u = |p: &[f64], x: f64| (data.u0)(p, x);
                // One-sided fourth-order second derivative in x_n, central in x′.
                let f: Vec<C64> = (0..6).map(|j| u(xp, j as f64 * h)).collect();
                let mut lap =
                    (f[0] * 45.0 - f[1] * 154.0 + f[2] * 214.0 - f[3] * 156.0 + f[4] * 61.0 - f[5] * 10.0) / (12.0 * h * h);
                for d in 0..xp.len() {
                    let at = |dx: f64| {
                        let mut q = xp.clone();
                        q[d] += dx;
                        u(&q, 0.0)
                    };
                    lap += (-at(2.0 * h) + at(h) * 16.0 - f[0] * 30.0 + at(-h) * 16.0 - at(-2.0 * h)) / (12.0 * h * h);
                }
                let u00 = f[0];
                let phi1 = C64::new(0.0, 1.0) * (lap + sign.value() * u00.norm_sqr() * u00);
                let g: Vec<C64> = (0..5).map(|j| (data.g0)(xp, j as f64 * h)).collect();
                let gt = (g[0] * -25.0 + g[1] * 48.0 - g[2] * 36.0 + g[3] * 16.0 - g[4] * 3.0) / (12.0 * h);
                (gt - phi1).norm()
            };
            worst = worst.max(r);
        }
        residuals.push(worst);
    }
    let pass = residuals.iter().all(|&r| r < opts.tolerance);
    Ok(CompatibilityReport { orders, residuals, tolerance: opts.tolerance, pass })
}

/// `−σ|u|²u` sampled on the iterate's grid.
fn nonlinear_forcing(u: &SampledField, sign: Sign) -> SampledField {
    let sigma = sign.value();
    SampledField { grid: u.grid.clone(), values: u.values.iter().map(|v| -sigma * v.norm_sqr() * v).collect() }
}

fn initial_row(data: &ProblemData, grid: &NlsGrid) -> Result<Vec<C64>> {
    let sg = Grid::new(grid.spatial.clone())?;
    let n = data.n;
    Ok(SampledField::from_fn(sg, |c| (data.u0)(&c[..n - 1], c[n - 1]))?.values)
}

/// One application of the iteration map: the linear solution with forcing
/// ∓|u|²u. Iterates live on [`NlsGrid::field`]; the t = 0 row of the result is u₀.
pub fn picard_step(u: &SampledField, data: &ProblemData, grid: &NlsGrid, cfg: &SolverConfig) -> Result<SampledField> {
    grid.validate(data)?;
    let full = grid.field()?;
    if u.grid != full {
        return crate::error::shape("iterate is not on the solution grid");
    }
    let forced = data.clone().with_forcing(Forcing::Grid(Arc::new(nonlinear_forcing(u, cfg.sign))));
    let (inner, _) = solve_on_grid(&forced, &grid.output()?, &cfg.linear)?;
    let m = grid.steps;
    let row0 = initial_row(data, grid)?;
    let mut values = Vec::with_capacity(full.len());
    for (p, v0) in row0.iter().enumerate() {
        values.push(*v0);
        values.extend_from_slice(&inner.values[p * m..(p + 1) * m]);
    }
    SampledField::new(full, values)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmallnessReport {
    pub data_norm: f64,
    pub threshold: Option<f64>,
    pub within: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceLog {
    /// Discrete L² norms of u_{k+1} − u_k.
    pub differences: Vec<f64>,
    /// The same divided by ‖u_{k+1}‖.
    pub relative: Vec<f64>,
    /// differences[k+1] / differences[k].
    pub ratios: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub max_iterate_norm: f64,
    pub left_ball: bool,
    pub smallness: Option<SmallnessReport>,
    pub warnings: Vec<String>,
}

/// ‖u₀‖_{H^s} + ‖g₀‖_{B^s} measured on the solution grid with the standard extension.
pub fn data_size(data: &ProblemData, grid: &NlsGrid, s: f64) -> Result<f64> {
    let sg = Grid::new(grid.spatial.clone())?;
    let n = data.n;
    let u0 = SampledField::from_fn(sg, |c| (data.u0)(&c[..n - 1], c[n - 1]))?;
    let p = SobolevParams::new(s, 0.0, 0.0, n);
    let recipe = ExtensionRecipe::default();
    let hs = restricted_norm_upper(&u0, (0.0, data.time), &p, NormKind::Hs, &recipe)?;
    let mut axes = grid.spatial[..n - 1].to_vec();
    let nt = (grid.steps + 1).max(8);
    axes.push(UniformAxis::midpoints(0.0, data.time, nt)?);
    let g0 = SampledField::from_fn(Grid::new(axes)?, |c| (data.g0)(&c[..n - 1], c[n - 1]))?;
    let bs = restricted_norm_upper(&g0, (0.0, data.time), &p, NormKind::Bs, &recipe)?;
    Ok(hs + bs)
}

fn l2(values: &[C64], cell: f64) -> f64 {
    (values.iter().map(|v| v.norm_sqr()).sum::<f64>() * cell).sqrt()
}

/// Iterates the map from u = 0 until the relative successive difference drops
/// below the tolerance.
pub fn solve_nls(data: &ProblemData, grid: &NlsGrid, cfg: &SolverConfig) -> Result<(SampledField, ConvergenceLog)> {
    cfg.validate()?;
    data.validate()?;
    grid.validate(data)?;
    if data.forcing.is_some() {
        return config("the nonlinear problem takes no external forcing");
    }
    let mut log = ConvergenceLog::default();
    match cfg.smallness {
        SmallnessGate::Warn => {
            if let Ok(size) = data_size(data, grid, cfg.params.s) {
                log.smallness = Some(SmallnessReport { data_norm: size, threshold: None, within: None });
            }
        }
        SmallnessGate::Strict { c } => {
            let size = data_size(data, grid, cfg.params.s)?;
            let threshold = 1.0 / (32.0 * c * c);
            if size > threshold {
                return domain(format!("data size {size} exceeds the smallness threshold {threshold}"));
            }
            log.smallness = Some(SmallnessReport { data_norm: size, threshold: Some(threshold), within: Some(true) });
        }
    }
    let full = grid.field()?;
    let cell = full.cell_volume();
    let mut u = SampledField::zeros(full);
    let mut growing = 0;
    for _ in 0..cfg.max_iterations {
        let next = picard_step(&u, data, grid, cfg)?;
        let diff: Vec<C64> = next.values.iter().zip(&u.values).map(|(a, b)| a - b).collect();
        let d = l2(&diff, cell);
        let norm = l2(&next.values, cell);
        let rel = if norm == 0.0 { if d == 0.0 { 0.0 } else { f64::INFINITY } } else { d / norm };
        if let Some(&prev) = log.differences.last() {
            log.ratios.push(if prev > 0.0 { d / prev } else { 0.0 });
            if cfg.contraction_monitor && d > prev {
                growing += 1;
            } else {
                growing = 0;
            }
        }
        log.differences.push(d);
        log.relative.push(rel);
        log.iterations += 1;
        log.max_iterate_norm = log.max_iterate_norm.max(norm);
        if let Some(r) = cfg.ball_radius {
            if norm > r && !log.left_ball {
                log.left_ball = true;
                log.warnings.push(format!("iterate {} has norm {norm} outside the ball of radius {r}", log.iterations));
            }
        }
        u = next;
        if !d.is_finite() {
            return Err(FokasError::Numerical(format!("iterate {} is not finite", log.iterations)));
        }
        if growing >= 3 {
            return Err(FokasError::NonContraction { consecutive: growing, history: log.differences.clone() });
        }
        if rel < cfg.fixed_point_tolerance {
            log.converged = true;
            break;
        }
    }
    if !log.converged {
        log.warnings.push(format!("no convergence within {} iterations", cfg.max_iterations));
    }
    Ok((u, log))
}

/// `c₀ [1 + ‖u₀‖ + ‖g₀‖]^{−32/s}` for n = 2, 0 < s < 1/2.
pub fn lifespan_estimate(u0_norm: f64, g0_norm: f64, s: f64, c0: f64) -> Result<f64> {
    if !(s > 0.0 && s < 0.5) {
        return domain(format!("lifespan estimate needs 0 < s < 1/2, got {s}"));
    }
    if !(u0_norm >= 0.0 && g0_norm >= 0.0 && c0 > 0.0) {
        return domain("norms must be nonnegative and c0 positive");
    }
    Ok(c0 * (1.0 + u0_norm + g0_norm).powf(-32.0 / s))
}

/// `i u_t + Δu + σ|u|²u` by second-order central differences at interior grid
/// points; `u` lives on (x′…, x_n, t). Returns the interior field.
pub fn discrete_residual(u: &SampledField, sign: Sign) -> Result<SampledField> {
    residual_with_cubic(u, sign.value())
}

/// `i u_t + Δu` by the same differences, for solutions of the linear problem.
pub fn linear_discrete_residual(u: &SampledField) -> Result<SampledField> {
    residual_with_cubic(u, 0.0)
}

fn residual_with_cubic(u: &SampledField, sigma: f64) -> Result<SampledField> {
    let shp = u.grid.shape();
    if shp.iter().any(|&c| c < 3) {
        return crate::error::shape("residual needs at least 3 points per axis");
    }
    let d = shp.len();
    let axes: Vec<UniformAxis> = u
        .grid
        .axes
        .iter()
        .map(|a| UniformAxis::new(a.start + a.step, a.step, a.count - 2))
        .collect::<Result<_>>()?;
    let inner = Grid::new(axes)?;
    let strides: Vec<usize> = (0..d).map(|k| shp[k + 1..].iter().product()).collect();
    let mut values = Vec::with_capacity(inner.len());
    let mut idx = vec![0usize; d];
    for flat in 0..inner.len() {
        let mut k = flat;
        for a in (0..d).rev() {
            idx[a] = k % (shp[a] - 2) + 1;
            k /= shp[a] - 2;
        }
        let at: usize = idx.iter().zip(&strides).map(|(i, s)| i * s).sum();
        let c = u.values[at];
        let t = &u.grid.axes[d - 1];
        let ut = (u.values[at + strides[d - 1]] - u.values[at - strides[d - 1]]) / (2.0 * t.step);
        let mut lap = C64::new(0.0, 0.0);
        for a in 0..d - 1 {
            let h = u.grid.axes[a].step;
            lap += (u.values[at + strides[a]] - 2.0 * c + u.values[at - strides[a]]) / (h * h);
        }
        values.push(C64::new(0.0, 1.0) * ut + lap + sigma * c.norm_sqr() * c);
    }
    SampledField::new(inner, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{whole_space_restriction_data, GaussianPacket};

    fn small_grid() -> NlsGrid {
        NlsGrid::new(vec![UniformAxis::linspace(0.0, 4.0, 33).unwrap()], 0.3 / 16.0, 16)
    }

    fn cfg() -> SolverConfig {
        SolverConfig {
            params: SobolevParams::with_default_modulation(0.3, 1),
            fixed_point_tolerance: 1e-10,
            ..SolverConfig::default()
        }
    }

    #[test]
    fn orders_follow_regularity() {
        assert!(compatibility_orders(0.3).unwrap().is_empty());
        assert!(compatibility_orders(0.5).is_err());
        assert_eq!(compatibility_orders(1.0).unwrap(), vec![0]);
        assert!(compatibility_orders(2.5).is_err());
        assert_eq!(compatibility_orders(3.0).unwrap(), vec![0, 1]);
    }

    #[test]
    fn zero_data_is_compatible() {
        let d = ProblemData::zero(2, 8.0, 0.4);
        let r = check_compatibility(&d, 3.0, Sign::Plus, &CompatibilityOptions::default()).unwrap();
        assert!(r.pass);
        assert!(r.residuals.iter().all(|&v| v == 0.0));
        let r = check_compatibility(&d, 0.3, Sign::Plus, &CompatibilityOptions::default()).unwrap();
        assert!(r.orders.is_empty() && r.pass);
    }

    #[test]
    fn restricted_free_solution_is_compatible() {
        // A free solution meets the order-1 condition of the linear flow; the
        // cubic term is then the only mismatch, and it is small for small amplitude.
        let p = GaussianPacket { center: vec![0.0, 0.3], ..GaussianPacket::centered(2) };
        let d = whole_space_restriction_data(p.solution(), 2, 8.0, 0.4);
        let r = check_compatibility(&d, 1.0, Sign::Plus, &CompatibilityOptions::default()).unwrap();
        assert!(r.residuals[0] < 1e-8);
        let tiny = GaussianPacket { amplitude: C64::new(1e-4, 0.0), center: vec![0.0, 0.3], ..GaussianPacket::centered(2) };
        let d = whole_space_restriction_data(tiny.solution(), 2, 8.0, 0.4);
        let r = check_compatibility(&d, 3.0, Sign::Plus, &CompatibilityOptions::default()).unwrap();
        assert!(r.residuals[0] < 1e-12, "{:?}", r.residuals);
        assert!(r.residuals[1] < 1e-8, "{:?}", r.residuals);
    }

    #[test]
    fn lifespan_examples() {
        assert!((lifespan_estimate(0.0, 0.0, 0.4, 0.25).unwrap() - 0.25).abs() < 1e-15);
        let a = lifespan_estimate(0.5, 0.5, 0.4, 1.0).unwrap();
        let b = lifespan_estimate(0.0, 0.0, 0.4, 1.0).unwrap();
        assert!((a / b - 2f64.powi(-80)).abs() < 1e-12 * 2f64.powi(-80));
        assert!(lifespan_estimate(0.1, 0.2, 0.4, 1.0).unwrap() > lifespan_estimate(0.2, 0.2, 0.4, 1.0).unwrap());
        assert!(lifespan_estimate(0.1, 0.2, 0.4, 1.0).unwrap() > lifespan_estimate(0.1, 0.3, 0.4, 1.0).unwrap());
        assert!(lifespan_estimate(0.0, 0.0, 0.5, 1.0).is_err());
        assert!(lifespan_estimate(0.0, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn zero_data_is_a_fixed_point() {
        let d = ProblemData::zero(1, 8.0, 0.4);
        let (u, log) = solve_nls(&d, &small_grid(), &cfg()).unwrap();
        assert_eq!(u.max_abs(), 0.0);
        assert_eq!(log.iterations, 1);
        assert!(log.converged);
    }

    #[test]
    fn first_step_is_the_linear_solution() {
        let p = GaussianPacket { amplitude: C64::new(0.3, 0.0), center: vec![1.5], ..GaussianPacket::centered(1) };
        let d = whole_space_restriction_data(p.solution(), 1, 8.0, 0.4);
        let g = small_grid();
        let c = cfg();
        let zero = SampledField::zeros(g.field().unwrap());
        let step = picard_step(&zero, &d, &g, &c).unwrap();
        let lin = solve_on_grid(&d, &g.output().unwrap(), &c.linear).unwrap().0;
        let m = g.steps;
        for (p, chunk) in step.values.chunks(m + 1).enumerate() {
            assert_eq!(chunk[0], (d.u0)(&[], g.spatial[0].point(p)));
            for k in 0..m {
                assert!((chunk[k + 1] - lin.values[p * m + k]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn strict_gate_rejects_large_data() {
        let p = GaussianPacket { amplitude: C64::new(5.0, 0.0), center: vec![1.5], ..GaussianPacket::centered(1) };
        let d = whole_space_restriction_data(p.solution(), 1, 8.0, 0.4);
        let c = SolverConfig { smallness: SmallnessGate::Strict { c: 1.0 }, ..cfg() };
        let r = solve_nls(&d, &small_grid(), &c);
        assert!(matches!(r, Err(FokasError::Domain(_))), "{:?}", r.map(|x| x.1));
    }

    #[test]
    fn residual_vanishes_on_a_discrete_solution() {
        // u = ε(x² + 2it) solves iu_t + u_xx = 0 exactly under central differences.
        let ax = UniformAxis::linspace(0.0, 1.0, 11).unwrap();
        let g = Grid::new(vec![ax, ax]).unwrap();
        let u = SampledField::from_fn(g, |c| (C64::new(0.0, 2.0 * c[1]) + c[0] * c[0]) * 1e-6).unwrap();
        let r = discrete_residual(&u, Sign::Plus).unwrap();
        assert_eq!(r.shape(), vec![9, 9]);
        assert!(r.max_abs() < 1e-15);
    }
}
