//! Structured grids and complex fields sampled on them.
//!
//! Physical grids order their axes as (x′…, x_n, t); frequency grids as
//! (ξ′…, ξ_n, τ). Values are stored row-major with the last axis fastest.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{config, shape, FokasError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformAxis {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl UniformAxis {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if count == 0 || !(step > 0.0) || !start.is_finite() || !step.is_finite() {
            return config(format!("invalid axis start={start} step={step} count={count}"));
        }
        Ok(Self { start, step, count })
    }

    /// `count` points from `lo` to `hi` inclusive.
    pub fn linspace(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count < 2 || !(hi > lo) {
            return config(format!("invalid linspace [{lo}, {hi}] with {count} points"));
        }
        Self::new(lo, (hi - lo) / (count - 1) as f64, count)
    }

    /// `count` cell midpoints of [lo, hi].
    pub fn midpoints(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count < 1 || !(hi > lo) {
            return config(format!("invalid midpoint axis [{lo}, {hi}] with {count} cells"));
        }
        let h = (hi - lo) / count as f64;
        Self::new(lo + 0.5 * h, h, count)
    }

    pub fn point(&self, k: usize) -> f64 {
        self.start + self.step * k as f64
    }

    pub fn last(&self) -> f64 {
        self.point(self.count - 1)
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.point(k)).collect()
    }

    /// Frequency axis matching the DFT of this axis, centred on zero.
    pub fn dual(&self) -> UniformAxis {
        let d = 2.0 * std::f64::consts::PI / (self.count as f64 * self.step);
        let c = (self.count / 2) as f64;
        UniformAxis { start: -c * d, step: d, count: self.count }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub axes: Vec<UniformAxis>,
}

impl Grid {
    pub fn new(axes: Vec<UniformAxis>) -> Result<Self> {
        if axes.is_empty() {
            return config("grid needs at least one axis");
        }
        Ok(Self { axes })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.count).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(|a| a.step).product()
    }

    pub fn coords_into(&self, mut flat: usize, out: &mut [f64]) {
        for (d, axis) in self.axes.iter().enumerate().rev() {
            out[d] = axis.point(flat % axis.count);
            flat /= axis.count;
        }
    }

    pub fn coords(&self, flat: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.coords_into(flat, &mut out);
        out
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.axes)
            .fold(0, |acc, (&i, a)| acc * a.count + i)
    }

    pub fn dual(&self) -> Grid {
        Grid { axes: self.axes.iter().map(UniformAxis::dual).collect() }
    }
}

/// Complex values on a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledField {
    pub grid: Grid,
    pub values: Vec<C64>,
}

impl SampledField {
    pub fn new(grid: Grid, values: Vec<C64>) -> Result<Self> {
        if values.len() != grid.len() {
            return shape(format!("{} values for a grid of {} points", values.len(), grid.len()));
        }
        if let Some(k) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(FokasError::Evaluation(format!("non-finite value at index {k}")));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        let n = grid.len();
        Self { grid, values: vec![C64::new(0.0, 0.0); n] }
    }

    pub fn from_fn<F: FnMut(&[f64]) -> C64>(grid: Grid, mut f: F) -> Result<Self> {
        let mut x = vec![0.0; grid.dim()];
        let values = (0..grid.len())
            .map(|k| {
                grid.coords_into(k, &mut x);
                f(&x)
            })
            .collect();
        Self::new(grid, values)
    }

    pub fn shape(&self) -> Vec<usize> {
        self.grid.shape()
    }

    /// `(Σ |v|² · cell volume)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.cell_volume()).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, a: C64) -> Self {
        Self { grid: self.grid.clone(), values: self.values.iter().map(|v| v * a).collect() }
    }

    pub fn same_grid(&self, other: &SampledField) -> Result<()> {
        if self.grid != other.grid {
            return shape("fields live on different grids");
        }
        Ok(())
    }

    /// Relative discrete L² distance `‖self − other‖ / ‖other‖`.
    pub fn relative_l2_error(&self, reference: &SampledField) -> Result<f64> {
        self.same_grid(reference)?;
        let num: f64 = self
            .values
            .iter()
            .zip(&reference.values)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        let den: f64 = reference.values.iter().map(|v| v.norm_sqr()).sum();
        Ok(if den == 0.0 { num.sqrt() } else { (num / den).sqrt() })
    }
}

/// Symmetric frequency cutoffs and resolutions for (ξ′, ξ_n, τ).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    pub n: usize,
    pub xi_prime_max: f64,
    pub xi_prime_count: usize,
    pub xi_n_max: f64,
    pub xi_n_count: usize,
    pub tau_max: f64,
    pub tau_count: usize,
}

impl FrequencyGrid {
    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.n) {
            return config(format!("dimension {} outside 1..=3", self.n));
        }
        let counts = [self.xi_prime_count, self.xi_n_count, self.tau_count];
        let cuts = [self.xi_prime_max, self.xi_n_max, self.tau_max];
        if counts.iter().any(|&c| c < 2) {
            return config("frequency counts must be >= 2");
        }
        if cuts.iter().any(|&c| !(c > 0.0 && c.is_finite())) {
            return config("frequency cutoffs must be positive");
        }
        Ok(())
    }

    fn symmetric(max: f64, count: usize) -> UniformAxis {
        UniformAxis { start: -max, step: 2.0 * max / (count - 1) as f64, count }
    }

    pub fn xi_prime_axis(&self) -> UniformAxis {
        Self::symmetric(self.xi_prime_max, self.xi_prime_count)
    }

    pub fn xi_n_axis(&self) -> UniformAxis {
        Self::symmetric(self.xi_n_max, self.xi_n_count)
    }

    pub fn tau_axis(&self) -> UniformAxis {
        Self::symmetric(self.tau_max, self.tau_count)
    }

    /// Spectrum grid (ξ′…, ξ_n, τ).
    pub fn spectrum_grid(&self) -> Result<Grid> {
        self.validate()?;
        let mut axes = vec![self.xi_prime_axis(); self.n - 1];
        axes.push(self.xi_n_axis());
        axes.push(self.tau_axis());
        Grid::new(axes)
    }
}
