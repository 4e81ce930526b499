//! Seeded ensembles and the ratio statistics of the linear and trilinear
//! estimates over them.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{member_rng, RatioStats};
use crate::cutoffs::psi;
use crate::error::{config, domain, Result};
use crate::fokas::{solve_on_grid, Forcing, LinearSolverConfig, ProblemData};
use crate::grid::{Grid, SampledField};
use crate::norms::{restricted_norm_upper, xsb_norm, ysb_norm, ExtensionRecipe, NormKind, SobolevParams};
use crate::oracle::{brute_force_trilinear_norm, whole_space_restriction_data, GaussianPacket, TrilinearNorm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldFamily {
    /// Independent complex normal values on the central half of every axis.
    GaussianRandomBandLimited,
    /// Random complex multiple of the indicator of a random sub-box.
    BoxIndicators,
    /// ψ-bump with random centre, width and complex modulation.
    ModulatedBumps,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub sample_count: usize,
    pub seed: u64,
    pub family: FieldFamily,
}

impl EnsembleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sample_count == 0 {
            return config("ensembles need at least one sample");
        }
        Ok(())
    }
}

fn normal_c64<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn family_member(family: FieldFamily, grid: &Grid, seed: u64, index: usize) -> Result<SampledField> {
    let mut rng = member_rng(seed, index);
    let axes = grid.axes.clone();
    match family {
        FieldFamily::GaussianRandomBandLimited => {
            let shp = grid.shape();
            let mut values = Vec::with_capacity(grid.len());
            for flat in 0..grid.len() {
                let mut rem = flat;
                let mut inside = true;
                for &n in shp.iter().rev() {
                    let k = rem % n;
                    rem /= n;
                    inside &= 4 * k + 4 >= n && 4 * k < 3 * n;
                }
                let v = normal_c64(&mut rng);
                values.push(if inside { v } else { C64::new(0.0, 0.0) });
            }
            SampledField::new(grid.clone(), values)
        }
        FieldFamily::BoxIndicators => {
            let bounds: Vec<(f64, f64)> = axes
                .iter()
                .map(|a| {
                    let (lo, hi) = (a.start, a.last());
                    let p: f64 = rng.gen_range(lo..hi);
                    let q: f64 = rng.gen_range(lo..hi);
                    (p.min(q) - 0.5 * a.step, p.max(q) + 0.5 * a.step)
                })
                .collect();
            let amp = normal_c64(&mut rng);
            SampledField::from_fn(grid.clone(), |c| {
                if c.iter().zip(&bounds).all(|(x, (lo, hi))| x >= lo && x <= hi) {
                    amp
                } else {
                    C64::new(0.0, 0.0)
                }
            })
        }
        FieldFamily::ModulatedBumps => {
            let params: Vec<(f64, f64, f64)> = axes
                .iter()
                .map(|a| {
                    let span = a.last() - a.start;
                    let centre = a.start + span * rng.gen_range(0.25..0.75);
                    let width = span * rng.gen_range(0.1..0.4);
                    let freq = rng.gen_range(-1.0..1.0) * std::f64::consts::PI / (4.0 * a.step);
                    (centre, width, freq)
                })
                .collect();
            let amp = normal_c64(&mut rng);
            SampledField::from_fn(grid.clone(), |c| {
                let mut v = amp;
                for (x, (centre, width, freq)) in c.iter().zip(&params) {
                    v *= C64::from_polar(psi((x - centre) / width), freq * x);
                }
                v
            })
        }
    }
}

/// Member i is a function of (seed, i) only.
pub fn field_ensemble(cfg: &EnsembleConfig, grid: &Grid) -> Result<Vec<SampledField>> {
    cfg.validate()?;
    (0..cfg.sample_count).into_par_iter().map(|i| family_member(cfg.family, grid, cfg.seed, i)).collect()
}

/// Parameter ranges of the Gaussian packets restricted from the whole space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PacketRanges {
    /// Centre of the x_n coordinate; tangential centres lie in ±tangential_centre.
    pub normal_centre: (f64, f64),
    pub tangential_centre: f64,
    pub width: (f64, f64),
    pub momentum: f64,
}

impl Default for PacketRanges {
    fn default() -> Self {
        Self { normal_centre: (-0.5, 1.5), tangential_centre: 1.0, width: (0.7, 1.5), momentum: 2.0 }
    }
}

/// Initial and boundary data of random free packets restricted to the
/// half-space, so every member satisfies the compatibility conditions.
pub fn packet_ensemble(n: usize, count: usize, seed: u64, ranges: &PacketRanges, length: f64, time: f64) -> Vec<ProblemData> {
    (0..count)
        .map(|i| {
            let mut rng = member_rng(seed, i);
            let mut center: Vec<f64> =
                (0..n - 1).map(|_| rng.gen_range(-ranges.tangential_centre..=ranges.tangential_centre)).collect();
            center.push(rng.gen_range(ranges.normal_centre.0..=ranges.normal_centre.1));
            let packet = GaussianPacket {
                amplitude: C64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU)),
                center,
                width: rng.gen_range(ranges.width.0..=ranges.width.1),
                momentum: (0..n).map(|_| rng.gen_range(-ranges.momentum..=ranges.momentum)).collect(),
            };
            whole_space_restriction_data(packet.solution(), n, length, time)
        })
        .collect()
}

/// Which linear estimate is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinearEstimate {
    /// X^{s,b} solution norm, −1/2 ≤ s < 1/2, forcing in X^{s,−b}.
    XLow,
    /// X^{s,b} solution norm, s > −3/2, forcing in X^{s,−b} ∩ Y^{s,−b}.
    XHigh,
    /// Y^{s,b} solution norm, s ≥ 0, forcing in X^{s,−b} ∩ Y^{s,−b}.
    Y,
}

impl LinearEstimate {
    pub fn check(self, s: f64, b: f64) -> Result<()> {
        if !(0.0..0.5).contains(&b) {
            return domain(format!("linear estimates need 0 ≤ b < 1/2, got {b}"));
        }
        let resonant = {
            let q = (2.0 * s - 1.0) / 4.0;
            q >= 0.0 && (q - q.round()).abs() < 1e-12
        };
        let ok = match self {
            LinearEstimate::XLow => (-0.5..0.5).contains(&s),
            LinearEstimate::XHigh => s > -1.5 && !resonant,
            LinearEstimate::Y => s >= 0.0 && !resonant,
        };
        if !ok {
            return domain(format!("s = {s} is outside the range of the {self:?} estimate"));
        }
        Ok(())
    }

    fn solution_kind(self) -> NormKind {
        match self {
            LinearEstimate::Y => NormKind::Ysb,
            _ => NormKind::Xsb,
        }
    }
}

fn sample_forcing(data: &ProblemData, grid: &Grid) -> Result<Option<SampledField>> {
    let n = data.n;
    match &data.forcing {
        None => Ok(None),
        Some(Forcing::Grid(f)) => Ok(Some((**f).clone())),
        Some(Forcing::Sampler(f)) => {
            SampledField::from_fn(grid.clone(), |c| f(&c[..n - 1], c[n - 1], c[n])).map(Some)
        }
    }
}

/// (LHS, RHS) of one linear estimate for one data set on a solution grid
/// (x′…, x_n, t) with times inside (0, T).
pub fn linear_estimate_sides(
    data: &ProblemData,
    grid: &Grid,
    params: &SobolevParams,
    which: LinearEstimate,
    solver: &LinearSolverConfig,
) -> Result<(f64, f64)> {
    which.check(params.s, params.b)?;
    let n = data.n;
    let window = (0.0, data.time);
    let recipe = ExtensionRecipe::default();
    let (u, _) = solve_on_grid(data, grid, solver)?;
    let lhs = restricted_norm_upper(&u, window, params, which.solution_kind(), &recipe)?;

    let spatial = Grid::new(grid.axes[..n].to_vec())?;
    let u0 = SampledField::from_fn(spatial, |c| (data.u0)(&c[..n - 1], c[n - 1]))?;
    let mut boundary_axes = grid.axes[..n - 1].to_vec();
    boundary_axes.push(grid.axes[n]);
    let g0 = SampledField::from_fn(Grid::new(boundary_axes)?, |c| (data.g0)(&c[..n - 1], c[n - 1]))?;
    let mut rhs = restricted_norm_upper(&u0, window, params, NormKind::Hs, &recipe)?
        + restricted_norm_upper(&g0, window, params, NormKind::Bs, &recipe)?;
    if let Some(f) = sample_forcing(data, grid)? {
        let neg = SobolevParams { b: -params.b, ..*params };
        rhs += restricted_norm_upper(&f, window, &neg, NormKind::Xsb, &recipe)?;
        if which != LinearEstimate::XLow {
            rhs += restricted_norm_upper(&f, window, &neg, NormKind::Ysb, &recipe)?;
        }
    }
    Ok((lhs, rhs))
}

/// LHS/RHS over a data ensemble; members with vanishing data give ratio 0.
pub fn linear_estimate_ratio(
    ensemble: &[ProblemData],
    grid: &Grid,
    params: &SobolevParams,
    which: LinearEstimate,
    solver: &LinearSolverConfig,
) -> Result<RatioStats> {
    which.check(params.s, params.b)?;
    let ratios = ensemble
        .par_iter()
        .map(|d| {
            let (lhs, rhs) = linear_estimate_sides(d, grid, params, which, solver)?;
            Ok(if rhs == 0.0 { 0.0 } else { lhs / rhs })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RatioStats::from_ratios(ratios))
}

/// ‖f ḡ h‖ in X^{s,−b} (or Y^{s,−b}) over the product of the X^{s,b′}
/// (or X^{s,b′} + Y^{s,b′}) norms, for spectra on a small (ξ…, τ) grid.
pub fn trilinear_ratio(
    triples: &[(SampledField, SampledField, SampledField)],
    params: &SobolevParams,
    norm: TrilinearNorm,
) -> Result<RatioStats> {
    params.check_trilinear()?;
    if !(params.s > params.n as f64 / 2.0 - 1.0) {
        return domain(format!("trilinear estimates need s > n/2 − 1, got s = {}", params.s));
    }
    let factor = |f: &SampledField| -> Result<f64> {
        let x = xsb_norm(f, params.s, params.b_prime)?;
        Ok(match norm {
            TrilinearNorm::X => x,
            TrilinearNorm::Y => x + ysb_norm(f, params.s, params.b_prime)?,
        })
    };
    let ratios = triples
        .par_iter()
        .map(|(f, g, h)| {
            let lhs = brute_force_trilinear_norm(f, g, h, params, norm)?;
            let rhs = factor(f)? * factor(g)? * factor(h)?;
            Ok(if rhs == 0.0 { 0.0 } else { lhs / rhs })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RatioStats::from_ratios(ratios))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::UniformAxis;

    fn spectrum_grid() -> Grid {
        Grid::new(vec![UniformAxis::new(-3.5, 1.0, 8).unwrap(), UniformAxis::new(-7.0, 2.0, 8).unwrap()]).unwrap()
    }

    fn triples(count: usize, seed: u64) -> Vec<(SampledField, SampledField, SampledField)> {
        let g = spectrum_grid();
        let cfg = EnsembleConfig { sample_count: 3 * count, seed, family: FieldFamily::GaussianRandomBandLimited };
        let f = field_ensemble(&cfg, &g).unwrap();
        f.chunks(3).map(|c| (c[0].clone(), c[1].clone(), c[2].clone())).collect()
    }

    #[test]
    fn ensembles_are_reproducible_and_nested() {
        let g = spectrum_grid();
        for family in [FieldFamily::GaussianRandomBandLimited, FieldFamily::BoxIndicators, FieldFamily::ModulatedBumps] {
            let small = field_ensemble(&EnsembleConfig { sample_count: 4, seed: 11, family }, &g).unwrap();
            let big = field_ensemble(&EnsembleConfig { sample_count: 8, seed: 11, family }, &g).unwrap();
            assert_eq!(small[..], big[..4]);
            assert!(small.iter().all(|f| f.max_abs() > 0.0));
        }
        assert!(field_ensemble(&EnsembleConfig { sample_count: 0, seed: 1, family: FieldFamily::BoxIndicators }, &g).is_err());
    }

    #[test]
    fn estimate_ranges() {
        assert!(LinearEstimate::XLow.check(0.5, 0.4).is_err());
        assert!(LinearEstimate::XLow.check(-0.5, 0.4).is_ok());
        assert!(LinearEstimate::XHigh.check(2.5, 0.4).is_err());
        assert!(LinearEstimate::XHigh.check(-1.4, 0.4).is_ok());
        assert!(LinearEstimate::Y.check(-0.1, 0.4).is_err());
        assert!(LinearEstimate::Y.check(0.0, 0.5).is_err());
    }

    #[test]
    fn zero_data_gives_zero_ratios() {
        let g = Grid::new(vec![UniformAxis::linspace(0.0, 4.0, 17).unwrap(), UniformAxis::midpoints(0.0, 0.3, 8).unwrap()])
            .unwrap();
        let data = vec![ProblemData::zero(1, 8.0, 0.3); 2];
        let p = SobolevParams::new(0.0, 0.4, 0.4, 1);
        let stats = linear_estimate_ratio(&data, &g, &p, LinearEstimate::XLow, &LinearSolverConfig::default()).unwrap();
        assert_eq!(stats.max, 0.0);
    }

    #[test]
    fn trilinear_zero_factor_and_homogeneity() {
        let p = SobolevParams::new(0.5, 0.45, 0.42, 1);
        let t = triples(3, 2);
        let zero = SampledField::zeros(spectrum_grid());
        let z = vec![(t[0].0.clone(), zero.clone(), t[0].2.clone())];
        assert_eq!(trilinear_ratio(&z, &p, TrilinearNorm::X).unwrap().max, 0.0);
        let scaled: Vec<_> = t
            .iter()
            .map(|(f, g, h)| (f.scale(C64::new(3.0, 0.0)), g.scale(C64::new(0.0, 0.5)), h.scale(C64::new(7.0, -1.0))))
            .collect();
        for norm in [TrilinearNorm::X, TrilinearNorm::Y] {
            let a = trilinear_ratio(&t, &p, norm).unwrap();
            let b = trilinear_ratio(&scaled, &p, norm).unwrap();
            for (x, y) in a.ratios.iter().zip(&b.ratios) {
                assert!((x - y).abs() < 1e-12 * x);
            }
        }
        assert!(trilinear_ratio(&t, &SobolevParams::new(0.5, 0.45, 0.3, 1), TrilinearNorm::X).is_err());
    }
}
