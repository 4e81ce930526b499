//! Solution of `iu_t + Δu = f` on ℝ^{n−1} × ℝ⁺ with Dirichlet data, by the
//! unified transform formula on the half-line and, for n ≥ 2, a Fourier
//! reduction in the tangential variables x′.

mod contour;
mod half_line;

use std::sync::Arc;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use contour::{ContourPath, ContourSpec, Leg};
pub use half_line::TermBreakdown;
use half_line::{GridForcing, HalfLineInputs, HalfLineKernel};

use crate::error::{config, domain, shape, FokasError, Result};
use crate::grid::{Grid, SampledField, UniformAxis};
use crate::quadrature::{CompositeRule, Rule};
use crate::transforms::{
    time_transform, transverse_rule, truncation_tail, BoundarySampler, ForcingSampler, QuadratureConfig,
    SpatialSampler,
};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

#[derive(Clone)]
pub enum Forcing {
    Sampler(ForcingSampler),
    /// Samples on a (x′…, x_n, t) grid whose t axis starts at 0; read as the
    /// multilinear interpolant and zero outside the grid.
    Grid(Arc<SampledField>),
}

/// Data of the forced linear IBVP. For n = 1 the samplers receive an empty x′.
#[derive(Clone)]
pub struct ProblemData {
    pub n: usize,
    pub u0: SpatialSampler,
    pub g0: BoundarySampler,
    pub forcing: Option<Forcing>,
    pub length: f64,
    pub time: f64,
}

impl std::fmt::Debug for ProblemData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemData")
            .field("n", &self.n)
            .field("forced", &self.forcing.is_some())
            .field("length", &self.length)
            .field("time", &self.time)
            .finish()
    }
}

impl ProblemData {
    pub fn new(n: usize, u0: SpatialSampler, g0: BoundarySampler, length: f64, time: f64) -> Self {
        Self { n, u0, g0, forcing: None, length, time }
    }

    pub fn with_forcing(mut self, forcing: Forcing) -> Self {
        self.forcing = Some(forcing);
        self
    }

    pub fn zero(n: usize, length: f64, time: f64) -> Self {
        let z = C64::new(0.0, 0.0);
        Self::new(n, Arc::new(move |_, _| z), Arc::new(move |_, _| z), length, time)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.n) {
            return config(format!("dimension {} outside 1..=3", self.n));
        }
        if !(self.length > 0.0) {
            return config("truncation length must be positive");
        }
        if !(self.time > 0.0 && self.time < 0.5) {
            return config(format!("horizon T = {} must lie in (0, 1/2)", self.time));
        }
        if let Some(Forcing::Grid(f)) = &self.forcing {
            if f.grid.dim() != self.n + 1 {
                return shape(format!("forcing grid has {} axes, expected {}", f.grid.dim(), self.n + 1));
            }
            let t = f.grid.axes[self.n];
            if t.start.abs() > 1e-12 * t.step {
                return shape("forcing grid time axis must start at t = 0");
            }
            if f.grid.axes[self.n - 1].start < -1e-12 {
                return shape("forcing grid must lie in x_n >= 0");
            }
        }
        Ok(())
    }

    /// Sum of two problems with matching geometry.
    pub fn add(&self, other: &ProblemData) -> Result<ProblemData> {
        if self.n != other.n || self.length != other.length || self.time != other.time {
            return config("cannot add problems with different geometry");
        }
        let (a, b) = (self.u0.clone(), other.u0.clone());
        let (ga, gb) = (self.g0.clone(), other.g0.clone());
        let forcing = match (&self.forcing, &other.forcing) {
            (None, None) => None,
            (Some(f), None) | (None, Some(f)) => Some(f.clone()),
            (Some(Forcing::Sampler(fa)), Some(Forcing::Sampler(fb))) => {
                let (fa, fb) = (fa.clone(), fb.clone());
                Some(Forcing::Sampler(Arc::new(move |xp, x, t| fa(xp, x, t) + fb(xp, x, t))))
            }
            (Some(Forcing::Grid(fa)), Some(Forcing::Grid(fb))) => {
                fa.same_grid(fb)?;
                let values = fa.values.iter().zip(&fb.values).map(|(p, q)| p + q).collect();
                Some(Forcing::Grid(Arc::new(SampledField::new(fa.grid.clone(), values)?)))
            }
            _ => return config("cannot add sampled and gridded forcing"),
        };
        Ok(ProblemData {
            n: self.n,
            u0: Arc::new(move |xp, x| a(xp, x) + b(xp, x)),
            g0: Arc::new(move |xp, t| ga(xp, t) + gb(xp, t)),
            forcing,
            length: self.length,
            time: self.time,
        })
    }
}

/// Discretization of the linear solver.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LinearSolverConfig {
    pub nodes_per_period: usize,
    pub rule: Rule,
    /// Cutoff Ξₙ of both contour legs.
    pub xi_n_max: f64,
    /// Fraction of Ξₙ where the smooth frequency taper begins.
    pub taper_start: f64,
    pub min_contour_panels: usize,
    /// Filon panels per unit length for the initial-data transforms.
    pub spatial_panels_per_unit: f64,
    /// Minimum Filon panels over (0, T) for the boundary transforms.
    pub temporal_panels: usize,
    /// Tangential cutoff Ξ′ and number of ξ′ samples per axis (n ≥ 2).
    pub xi_prime_max: f64,
    pub xi_prime_count: usize,
    /// (x_n, t) sample counts used to tabulate sampled forcing.
    pub forcing_samples: [usize; 2],
}

impl Default for LinearSolverConfig {
    fn default() -> Self {
        Self {
            nodes_per_period: 8,
            rule: Rule::GaussLegendreComposite,
            xi_n_max: 60.0,
            taper_start: 0.5,
            min_contour_panels: 64,
            spatial_panels_per_unit: 4.0,
            temporal_panels: 32,
            xi_prime_max: 12.0,
            xi_prime_count: 64,
            forcing_samples: [257, 129],
        }
    }
}

impl LinearSolverConfig {
    pub fn contour_spec(&self) -> ContourSpec {
        ContourSpec {
            xi_n_max: self.xi_n_max,
            taper_start: self.taper_start,
            nodes_per_period: self.nodes_per_period,
            rule: self.rule,
            min_panels: self.min_contour_panels,
        }
    }

    /// Contour resolving positions up to `x_max` for the given problem.
    pub fn contour(&self, data: &ProblemData, x_max: f64) -> Result<ContourPath> {
        ContourPath::new(&self.contour_spec(), data.time, x_max + data.length)
    }

    pub fn quadrature(&self, data: &ProblemData) -> QuadratureConfig {
        QuadratureConfig {
            nodes_per_period: self.nodes_per_period,
            rule: self.rule,
            length: data.length,
            time: data.time,
            panels_per_unit: self.spatial_panels_per_unit,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_period < 4 {
            return config("nodes per period must be >= 4");
        }
        if self.xi_prime_count < 2 || !(self.xi_prime_max > 0.0) {
            return config("tangential frequency grid needs count >= 2 and a positive cutoff");
        }
        if self.forcing_samples.iter().any(|&c| c < 2) || self.temporal_panels == 0 {
            return config("forcing tables and temporal panels must be nonempty");
        }
        Ok(())
    }

    /// Uniform ξ′ samples with trapezoid weights.
    pub fn xi_prime_rule(&self) -> CompositeRule {
        CompositeRule::trapezoid(-self.xi_prime_max, self.xi_prime_max, self.xi_prime_count)
    }

    fn temporal_panels_for(&self, xi_prime: &[f64], time: f64) -> usize {
        let k2: f64 = xi_prime.iter().map(|k| k * k).sum();
        self.temporal_panels.max((k2 * time / std::f64::consts::PI).ceil() as usize)
    }
}

/// Half-line data for one tangential frequency: u₂₀, g₂₀ and f₂ with the
/// integrating factor e^{i|ξ′|²t} applied. Forcing is returned tabulated.
pub fn reduce_to_half_line(data: &ProblemData, xi_prime: &[f64], cfg: &LinearSolverConfig) -> Result<ProblemData> {
    data.validate()?;
    if data.n < 2 {
        return Err(FokasError::NoOp("reduction to the half-line needs n >= 2".into()));
    }
    if xi_prime.len() != data.n - 1 {
        return shape(format!("ξ′ has {} components, expected {}", xi_prime.len(), data.n - 1));
    }
    let q = cfg.quadrature(data);
    let rule = Arc::new(transverse_rule(xi_prime, &q));
    let k2: f64 = xi_prime.iter().map(|k| k * k).sum();

    let (r, u0) = (rule.clone(), data.u0.clone());
    let u20: SpatialSampler = Arc::new(move |_, x| r.iter().map(|(p, w)| w * u0(p, x)).sum());
    let (r, g0) = (rule.clone(), data.g0.clone());
    let g20: BoundarySampler =
        Arc::new(move |_, t| C64::from_polar(1.0, k2 * t) * r.iter().map(|(p, w)| w * g0(p, t)).sum::<C64>());

    let forcing = match &data.forcing {
        None => None,
        Some(f) => {
            let table = tangential_forcing(f, data, xi_prime, &rule, cfg)?;
            Some(Forcing::Grid(Arc::new(table)))
        }
    };
    Ok(ProblemData { n: 1, u0: u20, g0: g20, forcing, length: data.length, time: data.time })
}

fn tangential_forcing(
    forcing: &Forcing,
    data: &ProblemData,
    xi_prime: &[f64],
    rule: &[(Vec<f64>, C64)],
    cfg: &LinearSolverConfig,
) -> Result<SampledField> {
    let k2: f64 = xi_prime.iter().map(|k| k * k).sum();
    match forcing {
        Forcing::Sampler(f) => {
            let [nx, nt] = cfg.forcing_samples;
            let grid = Grid::new(vec![
                UniformAxis::linspace(0.0, data.length, nx)?,
                UniformAxis::linspace(0.0, data.time, nt)?,
            ])?;
            let values: Vec<C64> = (0..grid.len())
                .into_par_iter()
                .map(|k| {
                    let c = grid.coords(k);
                    C64::from_polar(1.0, k2 * c[1]) * rule.iter().map(|(p, w)| w * f(p, c[0], c[1])).sum::<C64>()
                })
                .collect();
            SampledField::new(grid, values)
        }
        Forcing::Grid(f) => {
            let n = data.n;
            let axes = &f.grid.axes;
            // Exact transform of the piecewise-linear interpolant in each x′ axis.
            let factors: Vec<Vec<C64>> = (0..n - 1)
                .map(|d| {
                    let ax = axes[d];
                    let half = 0.5 * xi_prime[d] * ax.step;
                    let sinc2 = if half == 0.0 { 1.0 } else { (half.sin() / half).powi(2) };
                    (0..ax.count)
                        .map(|j| C64::from_polar(ax.step * sinc2, -xi_prime[d] * ax.point(j)))
                        .collect()
                })
                .collect();
            let xn = axes[n - 1];
            let t = axes[n];
            let inner = xn.count * t.count;
            let mut acc = vec![C64::new(0.0, 0.0); inner];
            let outer: usize = axes[..n - 1].iter().map(|a| a.count).product();
            let mut idx = vec![0usize; n - 1];
            for o in 0..outer {
                let mut rem = o;
                for d in (0..n - 1).rev() {
                    idx[d] = rem % axes[d].count;
                    rem /= axes[d].count;
                }
                let w: C64 = idx.iter().enumerate().map(|(d, &j)| factors[d][j]).product();
                for (a, v) in acc.iter_mut().zip(&f.values[o * inner..(o + 1) * inner]) {
                    *a += w * v;
                }
            }
            for (k, a) in acc.iter_mut().enumerate() {
                *a *= C64::from_polar(1.0, k2 * t.point(k % t.count));
            }
            SampledField::new(Grid::new(vec![xn, t])?, acc)
        }
    }
}

/// Tabulates the forcing of a one-dimensional problem on its (x_n, t) grid, rows = times.
fn half_line_forcing(data: &ProblemData, cfg: &LinearSolverConfig) -> Result<Option<GridForcing>> {
    let field = match &data.forcing {
        None => return Ok(None),
        Some(Forcing::Grid(f)) => f.clone(),
        Some(Forcing::Sampler(f)) => {
            let [nx, nt] = cfg.forcing_samples;
            let grid = Grid::new(vec![
                UniformAxis::linspace(0.0, data.length, nx)?,
                UniformAxis::linspace(0.0, data.time, nt)?,
            ])?;
            let f = f.clone();
            Arc::new(SampledField::from_fn(grid, move |c| f(&[], c[0], c[1]))?)
        }
    };
    let (x, t) = (field.grid.axes[0], field.grid.axes[1]);
    // Transpose (x, t) storage into time rows.
    let mut values = vec![C64::new(0.0, 0.0); x.count * t.count];
    for a in 0..x.count {
        for b in 0..t.count {
            values[b * x.count + a] = field.values[a * t.count + b];
        }
    }
    Ok(Some(GridForcing { x, t, values }))
}

fn half_line_kernel<'c>(
    data: &ProblemData,
    contour: &'c ContourPath,
    cfg: &LinearSolverConfig,
    temporal_panels: usize,
) -> Result<HalfLineKernel<'c>> {
    let forcing = half_line_forcing(data, cfg)?;
    let u0 = data.u0.clone();
    let g0 = data.g0.clone();
    let u = move |x: f64| u0(&[], x);
    let g = move |t: f64| g0(&[], t);
    let inputs = HalfLineInputs {
        u0: &u,
        g0: &g,
        forcing: forcing.as_ref(),
        length: data.length,
        time: data.time,
        spatial_panels: (data.length * cfg.spatial_panels_per_unit).ceil().max(1.0) as usize,
        temporal_panels,
    };
    HalfLineKernel::new(&inputs, contour)
}

fn check_contour(data: &ProblemData, contour: &ContourPath) -> Result<()> {
    if (contour.horizon - data.time).abs() > 1e-12 {
        return shape(format!(
            "contour was built for horizon {} but the problem has T = {}",
            contour.horizon, data.time
        ));
    }
    Ok(())
}

fn check_point(data: &ProblemData, x: &[f64], t: f64) -> Result<()> {
    if x.len() != data.n {
        return shape(format!("point has {} coordinates, expected {}", x.len(), data.n));
    }
    if x[data.n - 1] < 0.0 {
        return domain("x_n must be >= 0");
    }
    if !(t > 0.0 && t < data.time) {
        return domain(format!("t = {t} outside (0, T)"));
    }
    Ok(())
}

/// The three terms of the solution formula at one point.
pub fn eval_linear_terms(
    data: &ProblemData,
    x: &[f64],
    t: f64,
    contour: &ContourPath,
    cfg: &LinearSolverConfig,
) -> Result<TermBreakdown> {
    data.validate()?;
    cfg.validate()?;
    check_point(data, x, t)?;
    check_contour(data, contour)?;
    if x[data.n - 1] > contour.reach {
        return shape("x_n beyond the reach the contour was built for");
    }
    let xn = x[data.n - 1];
    if data.n == 1 {
        let kernel = half_line_kernel(data, contour, cfg, cfg.temporal_panels)?;
        return Ok(kernel.eval_terms(xn, t));
    }
    let samples = xi_prime_samples(data.n, cfg);
    let parts: Vec<Result<TermBreakdown>> = samples
        .par_iter()
        .map(|(k, w)| {
            let reduced = reduce_to_half_line(data, k, cfg)?;
            let kernel = half_line_kernel(&reduced, contour, cfg, cfg.temporal_panels_for(k, data.time))?;
            let tr = kernel.eval_terms(xn, t);
            let k2: f64 = k.iter().map(|v| v * v).sum();
            let phase: f64 = k.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - k2 * t;
            let f = C64::from_polar(*w, phase);
            Ok(TermBreakdown { whole_line: tr.whole_line * f, reflected: tr.reflected * f, boundary: tr.boundary * f })
        })
        .collect();
    let mut total = TermBreakdown::default();
    for p in parts {
        let p = p?;
        total.whole_line += p.whole_line;
        total.reflected += p.reflected;
        total.boundary += p.boundary;
    }
    Ok(total)
}

/// Solution at one point of the half-space.
pub fn eval_linear_solution(
    data: &ProblemData,
    x: &[f64],
    t: f64,
    contour: &ContourPath,
    cfg: &LinearSolverConfig,
) -> Result<C64> {
    Ok(eval_linear_terms(data, x, t, contour, cfg)?.total())
}

/// ξ′ sample points with weights `Π (w_j / 2π)`.
fn xi_prime_samples(n: usize, cfg: &LinearSolverConfig) -> Vec<(Vec<f64>, f64)> {
    let r = cfg.xi_prime_rule();
    let mut out = vec![(Vec::new(), 1.0)];
    for _ in 0..n - 1 {
        let mut next = Vec::new();
        for (p, w) in &out {
            for (&k, &wk) in r.nodes.iter().zip(&r.weights) {
                let mut q = p.clone();
                q.push(k);
                next.push((q, w * wk / TWO_PI));
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveDiagnostics {
    pub contour_nodes: usize,
    pub xi_n_max: f64,
    pub taper_start: f64,
    pub xi_prime_samples: usize,
    /// `∫_L^{2L} |u₀(0, x_n)| dx_n`, the initial-data mass beyond the truncation.
    pub truncation_tail: f64,
}

/// Solution on a grid with axes (x′…, x_n, t); every t must lie in (0, T).
pub fn solve_on_grid(
    data: &ProblemData,
    grid: &Grid,
    cfg: &LinearSolverConfig,
) -> Result<(SampledField, SolveDiagnostics)> {
    data.validate()?;
    cfg.validate()?;
    let n = data.n;
    if grid.dim() != n + 1 {
        return shape(format!("output grid has {} axes, expected {}", grid.dim(), n + 1));
    }
    let xn_axis = grid.axes[n - 1];
    let t_axis = grid.axes[n];
    if xn_axis.start < 0.0 {
        return domain("output grid reaches x_n < 0");
    }
    if !(t_axis.start > 0.0 && t_axis.last() < data.time) {
        return domain("output times must lie in (0, T)");
    }
    let xs = xn_axis.points();
    let ts = t_axis.points();
    let contour = cfg.contour(data, xn_axis.last())?;
    let nxt = xs.len() * ts.len();

    let values = if n == 1 {
        let kernel = half_line_kernel(data, &contour, cfg, cfg.temporal_panels)?;
        kernel.eval_grid(&xs, &ts)
    } else {
        let samples = xi_prime_samples(n, cfg);
        // u₁(ξ′; x_n, t) = e^{−i|ξ′|²t} u₂ for every tangential sample.
        let reduced: Vec<Vec<C64>> = samples
            .par_iter()
            .map(|(k, _)| -> Result<Vec<C64>> {
                let red = reduce_to_half_line(data, k, cfg)?;
                let kernel = half_line_kernel(&red, &contour, cfg, cfg.temporal_panels_for(k, data.time))?;
                let mut u = kernel.eval_grid(&xs, &ts);
                let k2: f64 = k.iter().map(|v| v * v).sum();
                for (idx, v) in u.iter_mut().enumerate() {
                    *v *= C64::from_polar(1.0, -k2 * ts[idx % ts.len()]);
                }
                Ok(u)
            })
            .collect::<Result<_>>()?;
        let tangential: Vec<UniformAxis> = grid.axes[..n - 1].to_vec();
        let outer: usize = tangential.iter().map(|a| a.count).product();
        let mut values = vec![C64::new(0.0, 0.0); outer * nxt];
        values.par_chunks_mut(nxt).enumerate().for_each(|(o, chunk)| {
            let mut rem = o;
            let mut xp = vec![0.0; n - 1];
            for d in (0..n - 1).rev() {
                xp[d] = tangential[d].point(rem % tangential[d].count);
                rem /= tangential[d].count;
            }
            for ((k, w), u) in samples.iter().zip(&reduced) {
                let phase: f64 = k.iter().zip(&xp).map(|(a, b)| a * b).sum();
                let f = C64::from_polar(*w, phase);
                for (c, v) in chunk.iter_mut().zip(u) {
                    *c += f * v;
                }
            }
        });
        values
    };
    let q = cfg.quadrature(data);
    let u0 = data.u0.clone();
    let diag = SolveDiagnostics {
        contour_nodes: contour.node_count(),
        xi_n_max: cfg.xi_n_max,
        taper_start: cfg.taper_start,
        xi_prime_samples: if n == 1 { 0 } else { cfg.xi_prime_count.pow(n as u32 - 1) },
        truncation_tail: truncation_tail(&move |p, x| u0(p, x), n - 1, &q),
    };
    Ok((SampledField::new(grid.clone(), values)?, diag))
}

/// The two contour pieces of the boundary term for a pure boundary problem,
/// computed with sampler-based time transforms on a uniform panel layout that
/// is independent of the main solver path. Returns (v_r, v_i) with
/// v = 2/(2π)ⁿ · (v_r + v_i).
pub fn split_contour_terms(
    data: &ProblemData,
    x: &[f64],
    t: f64,
    cfg: &LinearSolverConfig,
) -> Result<(C64, C64)> {
    data.validate()?;
    check_point(data, x, t)?;
    let n = data.n;
    let xn = x[n - 1];
    let q = QuadratureConfig {
        nodes_per_period: cfg.nodes_per_period + 4,
        rule: Rule::GaussLegendreComposite,
        length: data.length,
        time: data.time,
        panels_per_unit: 2.0 * cfg.spatial_panels_per_unit,
    };
    let xi_max = cfg.xi_n_max;
    let rate = 2.0 * xi_max * data.time + xn;
    let periods = rate * xi_max / TWO_PI;
    let leg = CompositeRule::oscillatory(Rule::GaussLegendreComposite, 0.0, xi_max, periods, cfg.nodes_per_period + 4, 64);
    let taper: Vec<f64> = leg
        .nodes
        .iter()
        .map(|&k| crate::cutoffs::frequency_taper(k, xi_max, cfg.taper_start))
        .collect();
    let g0 = data.g0.clone();
    let tangential: Vec<(Vec<f64>, f64)> = if n == 1 {
        vec![(Vec::new(), 1.0)]
    } else {
        xi_prime_samples(n, cfg).into_iter().map(|(k, w)| (k, w * TWO_PI.powi(n as i32 - 1))).collect()
    };
    let mut v_r = C64::new(0.0, 0.0);
    let mut v_i = C64::new(0.0, 0.0);
    for (k, wk) in &tangential {
        let k2: f64 = k.iter().map(|v| v * v).sum();
        let xk: f64 = k.iter().zip(x).map(|(a, b)| a * b).sum();
        let outer = C64::from_polar(*wk, xk - k2 * t);
        for ((&xi, &w), &tp) in leg.nodes.iter().zip(&leg.weights).zip(&taper) {
            let w = w * tp;
            // g̃₀(ξ′, −|ξ′|² − ξ_n², T) on the real leg and with ξ_n = iκ on the imaginary leg.
            let gr = time_transform(&*g0, k, C64::new(-k2 - xi * xi, 0.0), data.time, &q)?;
            let gi = time_transform(&*g0, k, C64::new(-k2 + xi * xi, 0.0), data.time, &q)?;
            v_r += outer * C64::from_polar(w * xi, xi * xn - xi * xi * t) * gr;
            v_i += outer * C64::from_polar(w * xi * (-xi * xn).exp(), xi * xi * t) * gi;
        }
    }
    Ok((v_r, v_i))
}
