//! Indicator-function triple showing the trilinear estimate fails for
//! s ≤ n/2 − 1. Every quantity is a product of box measures, so the ratio is
//! an explicit power of N.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{config, domain, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// |τ + ξ²| ≤ 1, 5N ≤ ξ_k ≤ 6N: output frequencies.
    A0,
    /// |τ₁ + ζ²| ≤ 1, N ≤ ζ_k ≤ 2N: support of c_f.
    A1,
    /// |τ₂ − η²| ≤ 1, N ≤ η_k ≤ 2N: support of c_g(−·,−·).
    A2,
    /// |τ₃| ≤ 47nN², N ≤ μ_k ≤ 4N: support of c_h.
    A3,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub scale: u32,
    pub n: usize,
    pub region: Region,
}

impl RegionSpec {
    pub fn new(scale: u32, n: usize, region: Region) -> Result<Self> {
        if scale == 0 || n == 0 {
            return config("region scale N and dimension n must be positive");
        }
        Ok(Self { scale, n, region })
    }

    /// Per-coordinate frequency interval [lo, hi] in units of N.
    fn frequency_box(&self) -> (f64, f64) {
        match self.region {
            Region::A0 => (5.0, 6.0),
            Region::A1 | Region::A2 => (1.0, 2.0),
            Region::A3 => (1.0, 4.0),
        }
    }

    /// Lebesgue measure ‖χ‖² of the region in ℝ^{n+1}.
    pub fn measure(&self) -> f64 {
        let big_n = self.scale as f64;
        let (lo, hi) = self.frequency_box();
        let side = (hi - lo) * big_n;
        let slab = match self.region {
            Region::A3 => 2.0 * 47.0 * self.n as f64 * big_n * big_n,
            _ => 2.0,
        };
        slab * side.powi(self.n as i32)
    }

    pub fn contains(&self, freq: &[f64], tau: f64) -> bool {
        let big_n = self.scale as f64;
        let (lo, hi) = self.frequency_box();
        if freq.len() != self.n || freq.iter().any(|&v| v < lo * big_n || v > hi * big_n) {
            return false;
        }
        let q: f64 = freq.iter().map(|v| v * v).sum();
        match self.region {
            Region::A0 | Region::A1 => (tau + q).abs() <= 1.0,
            Region::A2 => (tau - q).abs() <= 1.0,
            Region::A3 => tau.abs() <= 47.0 * self.n as f64 * big_n * big_n,
        }
    }

    /// Uniform sample from the region.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> (Vec<f64>, f64) {
        let big_n = self.scale as f64;
        let (lo, hi) = self.frequency_box();
        let freq: Vec<f64> = (0..self.n).map(|_| rng.gen_range(lo * big_n..=hi * big_n)).collect();
        let q: f64 = freq.iter().map(|v| v * v).sum();
        let u: f64 = rng.gen_range(-1.0..=1.0);
        let tau = match self.region {
            Region::A0 | Region::A1 => -q + u,
            Region::A2 => q + u,
            Region::A3 => u * 47.0 * self.n as f64 * big_n * big_n,
        };
        (freq, tau)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleTheta {
    pub scale: u32,
    pub n: usize,
    /// ‖χ_{A0}‖², ‖χ_{A1}‖², ‖χ_{A2}‖², ‖χ_{A3}‖².
    pub measures: [f64; 4],
    /// ‖Θ‖_{L²(A0)} from the pointwise lower bound N^{−2s−2b}|A1||A2| on A0.
    pub theta_l2_lower: f64,
    /// ‖c_f‖‖c_g‖‖c_h‖.
    pub product_norms: f64,
    pub ratio: f64,
}

/// Θ and the norm ratio at scale N for c_f = χ_{A1}, c_g = χ_{A2}, c_h = χ_{A3}.
pub fn counterexample_theta(scale: u32, n: usize, s: f64, b: f64) -> Result<CounterexampleTheta> {
    if !(b < 0.5) {
        return domain(format!("counterexample needs b < 1/2, got {b}"));
    }
    let m = |r| RegionSpec::new(scale, n, r).map(|spec| spec.measure());
    let measures = [m(Region::A0)?, m(Region::A1)?, m(Region::A2)?, m(Region::A3)?];
    let big_n = scale as f64;
    let theta_pointwise = big_n.powf(-2.0 * s - 2.0 * b) * measures[1] * measures[2];
    let theta_l2_lower = theta_pointwise * measures[0].sqrt();
    let product_norms = (measures[1] * measures[2] * measures[3]).sqrt();
    Ok(CounterexampleTheta { scale, n, measures, theta_l2_lower, product_norms, ratio: theta_l2_lower / product_norms })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleScan {
    pub scales: Vec<u32>,
    pub ratios: Vec<f64>,
    pub measured_slope: f64,
    pub predicted_slope: f64,
}

/// Least-squares slope of y against x.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Log-log slope of the ratio against N, with the predicted n − 2s − 2b − 1.
pub fn counterexample_scan(scales: &[u32], n: usize, s: f64, b: f64) -> Result<CounterexampleScan> {
    if scales.len() < 3 {
        return config("the scan needs at least three scales");
    }
    if scales.windows(2).any(|w| w[1] <= w[0]) {
        return config("scales must be increasing");
    }
    let ratios = scales
        .iter()
        .map(|&k| counterexample_theta(k, n, s, b).map(|t| t.ratio))
        .collect::<Result<Vec<_>>>()?;
    let lx: Vec<f64> = scales.iter().map(|&k| (k as f64).ln()).collect();
    let ly: Vec<f64> = ratios.iter().map(|r| r.ln()).collect();
    Ok(CounterexampleScan {
        scales: scales.to_vec(),
        ratios,
        measured_slope: fit_slope(&lx, &ly),
        predicted_slope: n as f64 - 2.0 * s - 2.0 * b - 1.0,
    })
}

/// Draws points from A0, A1, A2 and counts residual points (ξ−ζ−η, τ−τ₁−τ₂) outside A3.
pub fn support_violations<R: Rng>(scale: u32, n: usize, draws: usize, rng: &mut R) -> Result<usize> {
    let a0 = RegionSpec::new(scale, n, Region::A0)?;
    let a1 = RegionSpec::new(scale, n, Region::A1)?;
    let a2 = RegionSpec::new(scale, n, Region::A2)?;
    let a3 = RegionSpec::new(scale, n, Region::A3)?;
    let mut bad = 0;
    for _ in 0..draws {
        let (xi, tau) = a0.sample(rng);
        let (zeta, t1) = a1.sample(rng);
        let (eta, t2) = a2.sample(rng);
        let mu: Vec<f64> = (0..n).map(|k| xi[k] - zeta[k] - eta[k]).collect();
        if !a3.contains(&mu, tau - t1 - t2) {
            bad += 1;
        }
    }
    Ok(bad)
}
