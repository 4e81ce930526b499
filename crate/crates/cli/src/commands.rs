use std::fmt::Write as _;

use fokas_core::fokas::solve_on_grid;
use fokas_core::grid::{Grid, SampledField};
use fokas_core::lab::{counterexample_scan, VerificationReport};
use fokas_core::nls::{discrete_residual, linear_discrete_residual, solve_nls, SolverConfig};
use fokas_core::norms::{restricted_norm_upper, ExtensionRecipe, NormKind};
use fokas_core::FokasError;
use serde::Serialize;
use serde_json::{json, Value};

use crate::checks::{run_check, CHECKS};
use crate::config::RunConfig;
use crate::CliError;

/// Files to write and whether every check passed.
pub struct Outcome {
    pub files: Vec<(String, String)>,
    pub ok: bool,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialise");
    s.push('\n');
    s
}

/// Columns: coordinates…, re, im; values in 17 significant digits.
pub fn field_csv(field: &SampledField, names: &[&str]) -> String {
    let mut out = String::new();
    out.push_str(&names.join(","));
    out.push_str(",re,im\n");
    let mut c = vec![0.0; field.grid.dim()];
    for (k, v) in field.values.iter().enumerate() {
        field.grid.coords_into(k, &mut c);
        for x in &c {
            let _ = write!(out, "{x:.16e},");
        }
        let _ = writeln!(out, "{:.16e},{:.16e}", v.re, v.im);
    }
    out
}

fn column_names(n: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..n).map(|k| format!("x{k}")).collect();
    names.push("x_n".into());
    names.push("t".into());
    names
}

fn max_abs(f: &SampledField) -> f64 {
    f.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Sampled time range of a (…, t) grid; restriction norms are taken over it.
fn time_window(grid: &Grid) -> (f64, f64) {
    let t = grid.axes[grid.dim() - 1];
    (t.start, t.last())
}

/// H^s of u₀ and B^s of g₀ on the slices of `grid`.
fn data_norms(cfg: &RunConfig, grid: &Grid) -> Result<Value, CliError> {
    let n = cfg.n;
    let data = cfg.problem_data()?;
    let params = cfg.params();
    let recipe = ExtensionRecipe::default();
    let window = time_window(grid);
    let u0 = SampledField::from_fn(Grid::new(grid.axes[..n].to_vec())?, |c| (data.u0)(&c[..n - 1], c[n - 1]))?;
    let mut baxes = grid.axes[..n - 1].to_vec();
    baxes.push(grid.axes[n]);
    let g0 = SampledField::from_fn(Grid::new(baxes)?, |c| (data.g0)(&c[..n - 1], c[n - 1]))?;
    Ok(json!({
        "hs_u0": restricted_norm_upper(&u0, window, &params, NormKind::Hs, &recipe)?,
        "bs_g0": restricted_norm_upper(&g0, window, &params, NormKind::Bs, &recipe)?,
        "bs_homogeneous_g0": restricted_norm_upper(&g0, window, &params, NormKind::BsHomogeneous, &recipe)?,
    }))
}

pub fn solve_linear(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let n = cfg.n;
    let grid = cfg.solution_grid()?;
    let data = cfg.problem_data()?;
    let (u, diag) = solve_on_grid(&data, &grid, &cfg.linear)?;
    if u.values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(FokasError::Numerical("solution contains non-finite values".into()).into());
    }
    let params = cfg.params();
    let recipe = ExtensionRecipe::default();
    let xsb = restricted_norm_upper(&u, time_window(&grid), &params, NormKind::Xsb, &recipe)?;
    let residual = if grid.shape().iter().all(|&c| c >= 3) { Some(max_abs(&linear_discrete_residual(&u)?)) } else { None };
    let mut ok = true;
    let exact_error = match cfg.exact() {
        Some(exact) => {
            let want = SampledField::from_fn(grid.clone(), |c| exact(&c[..n], c[n]))?;
            let e = if want.l2_norm() == 0.0 { u.l2_norm() } else { u.relative_l2_error(&want)? };
            ok = e < 1e-3;
            Some(e)
        }
        None => None,
    };
    let summary = json!({
        "command": "solve-linear",
        "preset": cfg.preset,
        "n": n,
        "params": params,
        "norms": { "data": data_norms(cfg, &grid)?, "xsb_solution": xsb },
        "max_discrete_residual": residual,
        "relative_l2_error_vs_closed_form": exact_error,
        "diagnostics": diag,
    });
    let names = column_names(n);
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(Outcome { files: vec![("solution.csv".into(), field_csv(&u, &names)), ("summary.json".into(), to_json(&summary))], ok })
}

pub fn solve_nonlinear(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let n = cfg.n;
    let grid = cfg.nls_grid()?;
    let data = cfg.problem_data()?;
    let solver = SolverConfig {
        params: cfg.params(),
        max_iterations: cfg.nls.max_iterations,
        fixed_point_tolerance: cfg.nls.tolerance,
        sign: cfg.nls.sign,
        smallness: cfg.nls.smallness,
        linear: cfg.linear,
        ..SolverConfig::default()
    };
    let (u, log) = solve_nls(&data, &grid, &solver)?;
    let residual = if u.grid.shape().iter().all(|&c| c >= 3) { Some(max_abs(&discrete_residual(&u, cfg.nls.sign)?)) } else { None };
    let summary = json!({
        "command": "solve-nls",
        "preset": cfg.preset,
        "n": n,
        "params": solver.params,
        "sign": cfg.nls.sign,
        "converged": log.converged,
        "iterations": log.iterations,
        "max_discrete_residual": residual,
    });
    let names = column_names(n);
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(Outcome {
        ok: log.converged,
        files: vec![
            ("solution.csv".into(), field_csv(&u, &names)),
            ("convergence.json".into(), to_json(&log)),
            ("summary.json".into(), to_json(&summary)),
        ],
    })
}

pub fn norm(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let grid = cfg.solution_grid()?;
    let data = cfg.problem_data()?;
    let (u, _) = solve_on_grid(&data, &grid, &cfg.linear)?;
    let params = cfg.params();
    let recipe = ExtensionRecipe::default();
    let window = time_window(&grid);
    let norms = json!({
        "command": "norm",
        "preset": cfg.preset,
        "params": params,
        "data": data_norms(cfg, &grid)?,
        "solution": {
            "xsb": restricted_norm_upper(&u, window, &params, NormKind::Xsb, &recipe)?,
            "ysb": restricted_norm_upper(&u, window, &params, NormKind::Ysb, &recipe)?,
        },
    });
    Ok(Outcome { files: vec![("norms.json".into(), to_json(&norms))], ok: true })
}

pub fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let ids: Vec<String> = if cfg.checks.is_empty() { CHECKS.iter().map(|s| s.to_string()).collect() } else { cfg.checks.clone() };
    // Reject unknown ids before running anything.
    if let Some(bad) = ids.iter().find(|id| !CHECKS.contains(&id.as_str())) {
        return Err(CliError::Config(format!("unknown check '{bad}'; known: {}", CHECKS.join(", "))));
    }
    let mut reports: Vec<VerificationReport> = Vec::new();
    for id in &ids {
        reports.extend(run_check(id, cfg)?);
    }
    let ok = reports.iter().all(|r| r.pass);
    Ok(Outcome { files: vec![("report.json".into(), to_json(&reports))], ok })
}

pub fn counterexample(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let n = cfg.n;
    let scan = counterexample_scan(&cfg.scales, n, cfg.s, cfg.b)?;
    let mut csv = String::from("N,ratio\n");
    for (k, r) in scan.scales.iter().zip(&scan.ratios) {
        let _ = writeln!(csv, "{k},{r:.16e}");
    }
    let report = VerificationReport::compare(
        "counterexample-slope",
        &[("n", n as f64), ("s", cfg.s), ("b", cfg.b)],
        scan.predicted_slope,
        scan.measured_slope,
        0.05,
    );
    let ok = report.pass;
    let body = json!({ "scan": scan, "reports": [report] });
    Ok(Outcome { files: vec![("counterexample.csv".into(), csv), ("report.json".into(), to_json(&body))], ok })
}
