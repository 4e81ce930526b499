use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, shape, Result};
use crate::grid::{Grid, SampledField, UniformAxis};
use crate::norms::{weighted_norm, xsb_weight, ysb_weight, SobolevParams};
use crate::transforms::fft_nd;

/// Largest number of points per axis the brute-force sum accepts.
pub const MAX_BRUTE_FORCE_POINTS: usize = 8;

/// Which negative-modulation norm measures the cubic product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrilinearNorm {
    /// X^{s,−b}
    X,
    /// Y^{s,−b}
    Y,
}

fn check_triple(f: &SampledField, g: &SampledField, h: &SampledField) -> Result<()> {
    f.same_grid(g)?;
    f.same_grid(h)?;
    Ok(())
}

/// Grid carrying `f̂ * conj(ĝ(−·)) * ĥ`: 3N−2 points per axis.
fn product_grid(grid: &Grid) -> Result<Grid> {
    let axes = grid
        .axes
        .iter()
        .map(|a| UniformAxis::new(a.start - (a.count - 1) as f64 * a.step, a.step, 3 * a.count - 2))
        .collect::<Result<Vec<_>>>()?;
    Grid::new(axes)
}

/// `(2π)^{−2D} Π Δ²` for D axes: the discrete weight of the double convolution.
fn convolution_factor(grid: &Grid) -> f64 {
    let d = grid.dim() as i32;
    grid.cell_volume().powi(2) / (2.0 * std::f64::consts::PI).powi(2 * d)
}

/// Spectrum of f·ḡ·h by direct summation over all index triples.
pub fn trilinear_convolution(f: &SampledField, g: &SampledField, h: &SampledField) -> Result<SampledField> {
    check_triple(f, g, h)?;
    let shp = f.grid.shape();
    if shp.iter().any(|&n| n > MAX_BRUTE_FORCE_POINTS) {
        return shape(format!("brute-force convolution takes at most {MAX_BRUTE_FORCE_POINTS} points per axis"));
    }
    let out_grid = product_grid(&f.grid)?;
    let out_shape = out_grid.shape();
    let len = f.grid.len();
    let idx = |flat: usize| -> Vec<usize> {
        let mut r = vec![0; shp.len()];
        let mut k = flat;
        for d in (0..shp.len()).rev() {
            r[d] = k % shp[d];
            k /= shp[d];
        }
        r
    };
    let indices: Vec<Vec<usize>> = (0..len).map(idx).collect();
    let mut out = vec![C64::new(0.0, 0.0); out_grid.len()];
    let mut target = vec![0usize; shp.len()];
    for (a, ia) in indices.iter().enumerate() {
        let fa = f.values[a];
        if fa == C64::new(0.0, 0.0) {
            continue;
        }
        for (b, ib) in indices.iter().enumerate() {
            let fg = fa * g.values[b].conj();
            if fg == C64::new(0.0, 0.0) {
                continue;
            }
            for (c, ic) in indices.iter().enumerate() {
                for d in 0..shp.len() {
                    // ζ₁ − ζ₂ + ζ₃ lands on index a − b + c + (N − 1).
                    target[d] = ia[d] + ic[d] + shp[d] - 1 - ib[d];
                }
                let flat = target.iter().zip(&out_shape).fold(0, |acc, (&t, &n)| acc * n + t);
                out[flat] += fg * h.values[c];
            }
        }
    }
    let k = convolution_factor(&f.grid);
    out.iter_mut().for_each(|v| *v *= k);
    SampledField::new(out_grid, out)
}

/// Same spectrum through the convolution theorem: zero-pad to M ≥ 3N−2 per
/// axis, multiply the DFTs of f̂, the reflected conj(ĝ) and ĥ, and invert.
pub fn product_path_trilinear(f: &SampledField, g: &SampledField, h: &SampledField) -> Result<SampledField> {
    check_triple(f, g, h)?;
    let shp = f.grid.shape();
    let out_grid = product_grid(&f.grid)?;
    let m: Vec<usize> = out_grid.shape();
    let total: usize = m.iter().product();
    let embed = |src: &SampledField, reflect: bool| -> Vec<C64> {
        let mut buf = vec![C64::new(0.0, 0.0); total];
        let mut i = vec![0usize; shp.len()];
        for (flat, v) in src.values.iter().enumerate() {
            let mut k = flat;
            for d in (0..shp.len()).rev() {
                i[d] = k % shp[d];
                k /= shp[d];
            }
            let pos = i.iter().zip(&shp).zip(&m).fold(0, |acc, ((&j, &n), &mm)| {
                acc * mm + if reflect { n - 1 - j } else { j }
            });
            buf[pos] = if reflect { v.conj() } else { *v };
        }
        fft_nd(&mut buf, &m, false);
        buf
    };
    let ff = embed(f, false);
    let gg = embed(g, true);
    let hh = embed(h, false);
    let mut prod: Vec<C64> = ff.iter().zip(&gg).zip(&hh).map(|((a, b), c)| a * b * c).collect();
    fft_nd(&mut prod, &m, true);
    let k = convolution_factor(&f.grid) / total as f64;
    prod.iter_mut().for_each(|v| *v *= k);
    SampledField::new(out_grid, prod)
}

/// `‖f ḡ h‖` in X^{s,−b} or Y^{s,−b} from the brute-force convolution.
pub fn brute_force_trilinear_norm(
    f: &SampledField,
    g: &SampledField,
    h: &SampledField,
    params: &SobolevParams,
    norm: TrilinearNorm,
) -> Result<f64> {
    if f.grid.dim() < 2 {
        return domain("spectra need spatial axes and a trailing τ axis");
    }
    let conv = trilinear_convolution(f, g, h)?;
    Ok(negative_norm(&conv, params, norm))
}

pub(crate) fn negative_norm(spectrum: &SampledField, p: &SobolevParams, norm: TrilinearNorm) -> f64 {
    let (s, b) = (p.s, -p.b);
    weighted_norm(spectrum, |c| {
        let (xi, tau) = c.split_at(c.len() - 1);
        match norm {
            TrilinearNorm::X => xsb_weight(xi, tau[0], s, b),
            TrilinearNorm::Y => ysb_weight(xi, tau[0], s, b),
        }
    })
}
