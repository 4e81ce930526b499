use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{config, FokasError, Result};
use crate::fokas::{Forcing, ProblemData};
use crate::grid::{Grid, SampledField, UniformAxis};

/// Uniform (x, t) grid on [0, L] × [0, T] with an absorbing layer before x = L.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FDGrid {
    pub h: f64,
    pub k: f64,
    pub length: f64,
    pub time: f64,
    pub sponge_width: f64,
    pub sponge_strength: f64,
}

impl FDGrid {
    /// Sponge of width L/4 and strength 40.
    pub fn new(h: f64, k: f64, length: f64, time: f64) -> Self {
        Self { h, k, length, time, sponge_width: 0.25 * length, sponge_strength: 40.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.k > 0.0 && self.length > 0.0 && self.time > 0.0) {
            return config("finite-difference steps and extents must be positive");
        }
        if self.sponge_width < 5.0 * self.h {
            return config(format!("sponge width {} is below 5h = {}", self.sponge_width, 5.0 * self.h));
        }
        if self.sponge_strength < 0.0 {
            return config("sponge strength must be nonnegative");
        }
        Ok(())
    }

    fn damping(&self, x: f64) -> f64 {
        let start = self.length - self.sponge_width;
        if x <= start {
            0.0
        } else {
            let y = (x - start) / self.sponge_width;
            self.sponge_strength * y * y
        }
    }
}

/// Crank–Nicolson for `iu_t + u_xx = f`, `u(0,t) = g₀(t)`, `u(L,t) = 0`, with
/// the damping term `−γ(x)u` added to `u_t` inside the sponge. Without forcing,
/// boundary data and sponge the step is a Cayley transform, hence unitary.
pub fn crank_nicolson_ibvp(data: &ProblemData, grid: &FDGrid) -> Result<SampledField> {
    grid.validate()?;
    if data.n != 1 {
        return config("the finite-difference reference handles n = 1 only");
    }
    let nx = (grid.length / grid.h).round() as usize;
    let nt = (grid.time / grid.k).round() as usize;
    if nx < 3 || nt < 1 {
        return config("finite-difference grid too coarse");
    }
    let h = grid.length / nx as f64;
    let k = grid.time / nt as f64;
    let xs: Vec<f64> = (0..=nx).map(|j| j as f64 * h).collect();
    let gamma: Vec<f64> = xs.iter().map(|&x| grid.damping(x)).collect();
    let i = C64::new(0.0, 1.0);
    let forcing = |x: f64, t: f64| -> C64 {
        match &data.forcing {
            Some(Forcing::Sampler(f)) => f(&[], x, t),
            Some(Forcing::Grid(_)) | None => C64::new(0.0, 0.0),
        }
    };
    if matches!(data.forcing, Some(Forcing::Grid(_))) {
        return config("the finite-difference reference takes sampled forcing only");
    }

    let mut u: Vec<C64> = xs.iter().map(|&x| (data.u0)(&[], x)).collect();
    u[0] = (data.g0)(&[], 0.0);
    u[nx] = C64::new(0.0, 0.0);
    let mut out = Vec::with_capacity((nx + 1) * (nt + 1));
    out.extend_from_slice(&u);

    let m = nx - 1;
    let r = i * (0.5 * k / (h * h));
    let off = -r;
    let diag: Vec<C64> = (1..nx).map(|j| 1.0 + 2.0 * r + 0.5 * k * gamma[j]).collect();
    let mut rhs = vec![C64::new(0.0, 0.0); m];
    for step in 0..nt {
        let t0 = step as f64 * k;
        let t1 = t0 + k;
        let g1 = (data.g0)(&[], t1);
        for j in 1..nx {
            let lap = u[j + 1] - 2.0 * u[j] + u[j - 1];
            let f = (forcing(xs[j], t0) + forcing(xs[j], t1)) * 0.5;
            rhs[j - 1] = u[j] + r * lap - 0.5 * k * gamma[j] * u[j] - i * k * f;
        }
        rhs[0] -= off * g1;
        let interior = thomas(off, &diag, off, &rhs)?;
        u[0] = g1;
        u[1..nx].copy_from_slice(&interior);
        u[nx] = C64::new(0.0, 0.0);
        out.extend_from_slice(&u);
    }
    // Stored as (t, x); transpose into (x, t).
    let mut values = vec![C64::new(0.0, 0.0); out.len()];
    for (s, row) in out.chunks_exact(nx + 1).enumerate() {
        for (j, v) in row.iter().enumerate() {
            values[j * (nt + 1) + s] = *v;
        }
    }
    let g = Grid::new(vec![UniformAxis::new(0.0, h, nx + 1)?, UniformAxis::new(0.0, k, nt + 1)?])?;
    SampledField::new(g, values)
}

/// Constant off-diagonals `lower`, `upper`; varying diagonal.
fn thomas(lower: C64, diag: &[C64], upper: C64, rhs: &[C64]) -> Result<Vec<C64>> {
    let n = diag.len();
    let mut c = vec![C64::new(0.0, 0.0); n];
    let mut d = vec![C64::new(0.0, 0.0); n];
    let mut pivot = diag[0];
    for j in 0..n {
        if j > 0 {
            pivot = diag[j] - lower * c[j - 1];
        }
        if pivot.norm() < 1e-300 {
            return Err(FokasError::Numerical(format!("zero pivot at row {j} of the tridiagonal solve")));
        }
        c[j] = upper / pivot;
        d[j] = if j == 0 { rhs[0] / pivot } else { (rhs[j] - lower * d[j - 1]) / pivot };
    }
    for j in (0..n - 1).rev() {
        d[j] = d[j] - c[j] * d[j + 1];
    }
    Ok(d)
}
