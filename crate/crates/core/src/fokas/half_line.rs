//! The half-line formula evaluated on a discretized ∂D⁺.
//!
//! With the negative half of the whole-line integral folded onto ξ > 0, the
//! solution splits into sums over the real leg (weights `a_k`, nodes ξ_k) and
//! the imaginary leg (weights `b_k`, ξ_n = iκ_k):
//!
//! ```text
//! u(x,t) = Σ_k a_k e^{−iξ²t} [ e^{iξx}((U⁺−iF⁺) − (U⁻−iF⁻))/2π + e^{−iξx}(U⁻−iF⁻)/2π + e^{iξx} ξ G_r/π ]
//!        + Σ_k b_k e^{iκ²t} e^{−κx} [ i(U_L − iF_L)/2π + κ G_i/π ]
//! ```
//!
//! where U^± = û₀(±ξ), U_L = û₀(−iκ) (a Laplace transform), G_r = g̃(−ξ²),
//! G_i = g̃(κ²), and the F terms are the forcing transform at the same
//! arguments. Inner transforms use Filon panels so large ξ costs nothing extra.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::contour::ContourPath;
use crate::error::{FokasError, Result};
use crate::grid::UniformAxis;
use crate::quadrature::{linear_exp_integral, FilonSignal, PanelBasis, PANEL_ORDER};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Forcing samples on a (x_n, t) grid; rows are times, both axes start at the origin of their range.
#[derive(Clone, Debug)]
pub(crate) struct GridForcing {
    pub x: UniformAxis,
    pub t: UniformAxis,
    /// `values[b * x.count + a]` = f(x_a, t_b).
    pub values: Vec<C64>,
}

impl GridForcing {
    fn rows(&self) -> Vec<FilonSignal> {
        self.values
            .chunks_exact(self.x.count)
            .map(|row| FilonSignal::linear(self.x.start, self.x.step, row))
            .collect()
    }
}

pub(crate) struct HalfLineInputs<'a> {
    pub u0: &'a (dyn Fn(f64) -> C64 + Sync),
    pub g0: &'a (dyn Fn(f64) -> C64 + Sync),
    pub forcing: Option<&'a GridForcing>,
    pub length: f64,
    pub time: f64,
    pub spatial_panels: usize,
    pub temporal_panels: usize,
}

/// Per-term breakdown at a single point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TermBreakdown {
    pub whole_line: C64,
    pub reflected: C64,
    pub boundary: C64,
}

impl TermBreakdown {
    pub fn total(&self) -> C64 {
        self.whole_line + self.reflected + self.boundary
    }
}

pub(crate) struct HalfLineKernel<'c> {
    contour: &'c ContourPath,
    u_plus: Vec<C64>,
    u_minus: Vec<C64>,
    u_lap: Vec<C64>,
    g_real: Vec<C64>,
    g_imag: Vec<C64>,
    forcing: Option<(GridForcing, Vec<FilonSignal>)>,
}

fn check_finite(values: &[C64], what: &str) -> Result<()> {
    if values.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
        Ok(())
    } else {
        Err(FokasError::Evaluation(format!("non-finite {what}")))
    }
}

impl<'c> HalfLineKernel<'c> {
    pub fn new(inputs: &HalfLineInputs, contour: &'c ContourPath) -> Result<Self> {
        let basis = PanelBasis::gauss(PANEL_ORDER);
        let u = FilonSignal::from_sampler(0.0, inputs.length, inputs.spatial_panels, &basis, inputs.u0);
        let g = FilonSignal::from_sampler(0.0, inputs.time, inputs.temporal_panels, &basis, inputs.g0);
        let xi = &contour.real_leg.nodes;
        let kappa = &contour.imaginary_leg.nodes;
        let u_plus: Vec<C64> = xi.par_iter().map(|&k| u.integrate(C64::new(0.0, -k))).collect();
        let u_minus: Vec<C64> = xi.par_iter().map(|&k| u.integrate(C64::new(0.0, k))).collect();
        let u_lap: Vec<C64> = kappa.par_iter().map(|&k| u.integrate(C64::new(-k, 0.0))).collect();
        let g_real: Vec<C64> = xi.par_iter().map(|&k| g.integrate(C64::new(0.0, k * k))).collect();
        let g_imag: Vec<C64> = kappa.par_iter().map(|&k| g.integrate(C64::new(0.0, -k * k))).collect();
        for (v, what) in [
            (&u_plus, "initial-data transform"),
            (&u_minus, "initial-data transform"),
            (&u_lap, "initial-data Laplace transform"),
            (&g_real, "boundary transform"),
            (&g_imag, "boundary transform"),
        ] {
            check_finite(v, what)?;
        }
        let forcing = inputs.forcing.map(|f| {
            let rows = f.rows();
            (f.clone(), rows)
        });
        Ok(Self { contour, u_plus, u_minus, u_lap, g_real, g_imag, forcing })
    }

    /// `F̃(ζ, t)` at each requested time, with `e^{−iζx}` ↦ `z_x` and `e^{iζ²s}` ↦ `z_s`.
    fn forcing_series(&self, z_x: C64, z_s: C64, times: &[f64]) -> Vec<C64> {
        let Some((f, rows)) = &self.forcing else {
            return vec![C64::new(0.0, 0.0); times.len()];
        };
        let fhat: Vec<C64> = rows.iter().map(|r| r.integrate(z_x)).collect();
        let cum = FilonSignal::linear(f.t.start, f.t.step, &fhat).cumulative(z_s);
        let last = f.t.count - 1;
        times
            .iter()
            .map(|&t| {
                let pos = (t - f.t.start) / f.t.step;
                if pos <= 0.0 {
                    return C64::new(0.0, 0.0);
                }
                if pos >= last as f64 {
                    return cum[last];
                }
                let j = pos.floor() as usize;
                let frac = pos - j as f64;
                let sj = f.t.point(j);
                let ft = fhat[j] * (1.0 - frac) + fhat[j + 1] * frac;
                cum[j] + linear_exp_integral(z_s, sj, t, fhat[j], ft)
            })
            .collect()
    }

    /// Forcing transforms at the real-leg arguments ±ξ_k and imaginary-leg arguments −iκ_k.
    fn forcing_tables(&self, times: &[f64]) -> (Vec<Vec<C64>>, Vec<Vec<C64>>, Vec<Vec<C64>>) {
        if self.forcing.is_none() {
            return (Vec::new(), Vec::new(), Vec::new());
        }
        let xi = &self.contour.real_leg.nodes;
        let kappa = &self.contour.imaginary_leg.nodes;
        let plus = xi
            .par_iter()
            .map(|&k| self.forcing_series(C64::new(0.0, -k), C64::new(0.0, k * k), times))
            .collect();
        let minus = xi
            .par_iter()
            .map(|&k| self.forcing_series(C64::new(0.0, k), C64::new(0.0, k * k), times))
            .collect();
        let lap = kappa
            .par_iter()
            .map(|&k| self.forcing_series(C64::new(-k, 0.0), C64::new(0.0, -k * k), times))
            .collect();
        (plus, minus, lap)
    }

    /// Solution on the tensor grid `xs × ts`, row-major in x.
    pub fn eval_grid(&self, xs: &[f64], ts: &[f64]) -> Vec<C64> {
        let nt = ts.len();
        let xi = &self.contour.real_leg.nodes;
        let a = &self.contour.real_leg.weights;
        let kappa = &self.contour.imaginary_leg.nodes;
        let b = &self.contour.imaginary_leg.weights;
        let (fp, fm, fl) = self.forcing_tables(ts);
        let forced = self.forcing.is_some();

        let real_rows: Vec<(Vec<C64>, Vec<C64>)> = (0..xi.len())
            .into_par_iter()
            .map(|k| {
                let mut c1 = Vec::with_capacity(nt);
                let mut c2 = Vec::with_capacity(nt);
                for (j, &t) in ts.iter().enumerate() {
                    let e = C64::from_polar(a[k], -xi[k] * xi[k] * t);
                    let (up, um) = if forced {
                        (self.u_plus[k] - I * fp[k][j], self.u_minus[k] - I * fm[k][j])
                    } else {
                        (self.u_plus[k], self.u_minus[k])
                    };
                    c1.push(e * ((up - um) / TWO_PI + self.g_real[k] * (xi[k] / std::f64::consts::PI)));
                    c2.push(e * um / TWO_PI);
                }
                (c1, c2)
            })
            .collect();
        let imag_rows: Vec<Vec<C64>> = (0..kappa.len())
            .into_par_iter()
            .map(|k| {
                ts.iter()
                    .enumerate()
                    .map(|(j, &t)| {
                        let p = C64::from_polar(b[k], kappa[k] * kappa[k] * t);
                        let ul = if forced { self.u_lap[k] - I * fl[k][j] } else { self.u_lap[k] };
                        p * (I * ul / TWO_PI + self.g_imag[k] * (kappa[k] / std::f64::consts::PI))
                    })
                    .collect()
            })
            .collect();

        let mut out = vec![C64::new(0.0, 0.0); xs.len() * nt];
        out.par_chunks_mut(nt).zip(xs.par_iter()).for_each(|(row, &x)| {
            for (k, (c1, c2)) in real_rows.iter().enumerate() {
                let e = C64::from_polar(1.0, xi[k] * x);
                let ec = e.conj();
                for ((o, p), q) in row.iter_mut().zip(c1).zip(c2) {
                    *o += e * p + ec * q;
                }
            }
            for (k, c3) in imag_rows.iter().enumerate() {
                let d = (-kappa[k] * x).exp();
                if d < 1e-300 {
                    break;
                }
                for (o, p) in row.iter_mut().zip(c3) {
                    *o += p * d;
                }
            }
        });
        out
    }

    pub fn eval_terms(&self, x: f64, t: f64) -> TermBreakdown {
        let xi = &self.contour.real_leg.nodes;
        let a = &self.contour.real_leg.weights;
        let kappa = &self.contour.imaginary_leg.nodes;
        let b = &self.contour.imaginary_leg.weights;
        let (fp, fm, fl) = self.forcing_tables(&[t]);
        let forced = self.forcing.is_some();
        let mut terms = TermBreakdown::default();
        for k in 0..xi.len() {
            let e = C64::from_polar(a[k], -xi[k] * xi[k] * t);
            let ex = C64::from_polar(1.0, xi[k] * x);
            let (up, um) = if forced {
                (self.u_plus[k] - I * fp[k][0], self.u_minus[k] - I * fm[k][0])
            } else {
                (self.u_plus[k], self.u_minus[k])
            };
            terms.whole_line += e * (ex * up + ex.conj() * um) / TWO_PI;
            terms.reflected -= e * ex * um / TWO_PI;
            terms.boundary += e * ex * self.g_real[k] * (xi[k] / std::f64::consts::PI);
        }
        for k in 0..kappa.len() {
            let p = C64::from_polar(b[k], kappa[k] * kappa[k] * t) * (-kappa[k] * x).exp();
            let ul = if forced { self.u_lap[k] - I * fl[k][0] } else { self.u_lap[k] };
            terms.reflected += p * I * ul / TWO_PI;
            terms.boundary += p * self.g_imag[k] * (kappa[k] / std::f64::consts::PI);
        }
        terms
    }
}
