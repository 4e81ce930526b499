//! Data samplers read from CSV tables on a uniform tensor grid.

use std::path::Path;

use fokas_core::C64;

use crate::CliError;

/// Multilinear interpolant of tabulated values; zero outside the table.
#[derive(Clone, Debug)]
pub struct Table {
    /// (start, step, count) per axis, first axis slowest.
    axes: Vec<(f64, f64, usize)>,
    values: Vec<C64>,
}

fn uniform_axis(mut pts: Vec<f64>, name: &str) -> Result<(f64, f64, usize), CliError> {
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    if pts.len() < 2 {
        return Err(CliError::Config(format!("column {name} needs at least two distinct values")));
    }
    let step = (pts[pts.len() - 1] - pts[0]) / (pts.len() - 1) as f64;
    let uniform = pts.iter().enumerate().all(|(k, &p)| (p - (pts[0] + k as f64 * step)).abs() <= 1e-9 * (1.0 + p.abs()));
    if !uniform {
        return Err(CliError::Config(format!("column {name} is not uniformly spaced")));
    }
    Ok((pts[0], step, pts.len()))
}

impl Table {
    /// Columns: `dim` coordinates, then re, im. Rows may come in any order but must fill the grid.
    pub fn parse(text: &str, dim: usize, what: &str) -> Result<Self, CliError> {
        let bad = |msg: String| CliError::Config(format!("{what}: {msg}"));
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let header: Vec<String> = reader.headers().map_err(|e| bad(e.to_string()))?.iter().map(str::to_owned).collect();
        if header.len() != dim + 2 || header[dim] != "re" || header[dim + 1] != "im" {
            return Err(bad(format!("expected {dim} coordinate columns followed by re,im")));
        }
        let mut rows = Vec::new();
        for (k, record) in reader.records().enumerate() {
            let record = record.map_err(|e| bad(e.to_string()))?;
            let row: Vec<f64> = record
                .iter()
                .map(str::parse::<f64>)
                .collect::<Result<_, _>>()
                .map_err(|e| bad(format!("row {}: {e}", k + 2)))?;
            if row.iter().any(|v| !v.is_finite()) {
                return Err(bad(format!("row {} holds a non-finite value", k + 2)));
            }
            rows.push(row);
        }
        let axes = (0..dim)
            .map(|d| uniform_axis(rows.iter().map(|r| r[d]).collect(), &header[d]))
            .collect::<Result<Vec<_>, _>>()?;
        let total: usize = axes.iter().map(|a| a.2).product();
        if rows.len() != total {
            return Err(bad(format!("{} rows do not fill a {total}-point grid", rows.len())));
        }
        let mut values = vec![C64::new(f64::NAN, 0.0); total];
        for r in &rows {
            let mut flat = 0;
            for (d, &(start, step, count)) in axes.iter().enumerate() {
                let i = ((r[d] - start) / step).round() as usize;
                flat = flat * count + i;
            }
            values[flat] = C64::new(r[dim], r[dim + 1]);
        }
        if values.iter().any(|v| v.re.is_nan()) {
            return Err(bad("duplicate grid points".into()));
        }
        Ok(Self { axes, values })
    }

    pub fn load(path: &Path, dim: usize) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, dim, &path.display().to_string())
    }

    pub fn eval(&self, x: &[f64]) -> C64 {
        let dim = self.axes.len();
        let mut base = 0usize;
        let mut frac = [0.0f64; 4];
        let mut stride = [0usize; 4];
        let mut s = 1;
        for d in (0..dim).rev() {
            stride[d] = s;
            s *= self.axes[d].2;
        }
        for (d, &(start, step, count)) in self.axes.iter().enumerate() {
            let u = (x[d] - start) / step;
            if !(u >= 0.0 && u <= (count - 1) as f64) {
                return C64::new(0.0, 0.0);
            }
            let i = (u.floor() as usize).min(count - 2);
            frac[d] = u - i as f64;
            base += i * stride[d];
        }
        let mut acc = C64::new(0.0, 0.0);
        for corner in 0..(1usize << dim) {
            let mut w = 1.0;
            let mut idx = base;
            for d in 0..dim {
                if corner >> d & 1 == 1 {
                    w *= frac[d];
                    idx += stride[d];
                } else {
                    w *= 1.0 - frac[d];
                }
            }
            if w != 0.0 {
                acc += self.values[idx] * w;
            }
        }
        acc
    }
}
