//! Verification checks run by `fokas verify`.

use fokas_core::fokas::LinearSolverConfig;
use fokas_core::grid::{Grid, SampledField, UniformAxis};
use fokas_core::lab::{
    calculus_lemma_check, counterexample_scan, eta_integral, fdecay_check, field_ensemble, laplace_bound_check,
    laplace_ratio_function, linear_estimate_ratio, multiplier_lemma_check, multiplier_sweep, packet_ensemble,
    profile_transform, profile_transform_direct, step_ensemble, trilinear_ratio, EnsembleConfig, FieldFamily,
    LinearEstimate, PacketRanges, ProfileTable, VerificationReport,
};
use fokas_core::norms::{beta_n, SobolevParams};
use fokas_core::oracle::TrilinearNorm;

use crate::config::RunConfig;
use crate::CliError;

pub const CHECKS: [&str; 9] = [
    "laplace",
    "counterexample",
    "calculus",
    "beta",
    "fdecay",
    "multiplier",
    "trilinear",
    "linear-estimate",
    "norm-monotonicity",
];

pub fn run_check(id: &str, cfg: &RunConfig) -> Result<Vec<VerificationReport>, CliError> {
    Ok(match id {
        "laplace" => laplace(cfg.seed)?,
        "counterexample" => counterexample(cfg)?,
        "calculus" => calculus()?,
        "beta" => beta(),
        "fdecay" => fdecay()?,
        "multiplier" => multiplier(cfg.seed)?,
        "trilinear" => trilinear(cfg.seed)?,
        "linear-estimate" => linear_estimate(cfg.seed)?,
        "norm-monotonicity" => norm_monotonicity(cfg.seed)?,
        other => return Err(CliError::Config(format!("unknown check '{other}'; known: {}", CHECKS.join(", ")))),
    })
}

fn laplace(seed: u64) -> Result<Vec<VerificationReport>, CliError> {
    let stats = laplace_bound_check(&step_ensemble(200, seed))?;
    Ok(vec![
        VerificationReport::upper_bound("laplace-ensemble-max", &[("samples", 200.0)], std::f64::consts::PI.sqrt(), stats.max, 1e-3),
        VerificationReport::compare("laplace-exponential", &[], 2f64.sqrt(), laplace_ratio_function(|x| (-x).exp(), 60.0), 1e-6),
    ])
}

fn counterexample(cfg: &RunConfig) -> Result<Vec<VerificationReport>, CliError> {
    let scan = counterexample_scan(&cfg.scales, cfg.n, cfg.s, cfg.b)?;
    Ok(vec![VerificationReport::compare(
        "counterexample-slope",
        &[("n", cfg.n as f64), ("s", cfg.s), ("b", cfg.b)],
        scan.predicted_slope,
        scan.measured_slope,
        0.05,
    )])
}

fn calculus() -> Result<Vec<VerificationReport>, CliError> {
    let sweep: Vec<f64> = std::iter::once(0.0).chain((0..=30).map(|j| 10f64.powf(j as f64 / 10.0))).collect();
    let mut out = Vec::new();
    for (l, lp) in [(0.4, 0.4), (0.6, 0.3), (0.5, 0.5)] {
        let p = calculus_lemma_check(l, lp, &sweep)?;
        let predicted = if (l - 0.5f64).abs() < 1e-12 {
            p.bound_slope
        } else if l > 0.5 {
            -2.0 * lp
        } else {
            1.0 - 2.0 * l - 2.0 * lp
        };
        out.push(VerificationReport::compare("calculus-tail-slope", &[("ell", l), ("ell_prime", lp)], predicted, p.tail_slope, 0.1));
    }
    Ok(out)
}

fn beta() -> Vec<VerificationReport> {
    [(2usize, 0.3, 0.0375), (2, 0.5, 0.0625), (3, 1.0, 0.0625)]
        .iter()
        .map(|&(n, s, want)| VerificationReport::compare("beta-n", &[("n", n as f64), ("s", s)], want, beta_n(s, n), 1e-15))
        .collect()
}

fn fdecay() -> Result<Vec<VerificationReport>, CliError> {
    let report = fdecay_check(0.0, &[4.0], &[0.0], &[0])?;
    let mut worst: f64 = 0.0;
    for (x, l) in [(0.0, 2.0), (3.0, 1.5), (-20.0, 5.0), (40.0, 10.0)] {
        let a = profile_transform(x, l);
        worst = worst.max((a - profile_transform_direct(x, l)).norm() / (1.0 + a.norm()));
    }
    let slope = fdecay_check(0.5, &[4.0], &[1.0], &[3])?.decay_slope;
    Ok(vec![
        VerificationReport::compare("fdecay-zero-frequency-ratio", &[("m", 0.0)], 2.0 * eta_integral(), report.rows[0].fitted_constant, 1e-10),
        VerificationReport::upper_bound("fdecay-scaling-vs-direct", &[], 0.0, worst, 1e-10),
        VerificationReport::upper_bound("fdecay-slope-at-most-minus-3", &[], -3.0, slope, 0.1),
    ])
}

fn multiplier(seed: u64) -> Result<Vec<VerificationReport>, CliError> {
    let pts = multiplier_sweep(100, seed);
    let coarse = ProfileTable::new(200.0, 800);
    let fine = ProfileTable::new(400.0, 3200);
    let mut out = Vec::new();
    for s in [0.0, -1.0] {
        let a = multiplier_lemma_check(s, 0.0, 0.5, &pts, &coarse)?;
        let b = multiplier_lemma_check(s, 0.0, 0.5, &pts, &fine)?;
        out.push(VerificationReport::upper_bound(
            "multiplier-max-ratio-refinement-change",
            &[("s", s), ("b", 0.0), ("eps", 0.5), ("max_ratio", a.max)],
            0.2,
            (b.max - a.max).abs() / a.max,
            0.0,
        ));
    }
    Ok(out)
}

fn trilinear(seed: u64) -> Result<Vec<VerificationReport>, CliError> {
    let g = Grid::new(vec![UniformAxis::new(-3.5, 1.0, 8)?, UniformAxis::new(-7.0, 2.0, 8)?])?;
    let params = SobolevParams::new(0.5, 0.45, 0.42, 1);
    let triples = |count: usize| -> Result<Vec<(SampledField, SampledField, SampledField)>, CliError> {
        let cfg = EnsembleConfig { sample_count: 3 * count, seed, family: FieldFamily::GaussianRandomBandLimited };
        let f = field_ensemble(&cfg, &g)?;
        Ok(f.chunks(3).map(|c| (c[0].clone(), c[1].clone(), c[2].clone())).collect())
    };
    let mut out = Vec::new();
    for norm in [TrilinearNorm::X, TrilinearNorm::Y] {
        let a = trilinear_ratio(&triples(20)?, &params, norm)?;
        let b = trilinear_ratio(&triples(40)?, &params, norm)?;
        let name = match norm {
            TrilinearNorm::X => "trilinear-x-ensemble-change",
            TrilinearNorm::Y => "trilinear-y-ensemble-change",
        };
        out.push(VerificationReport::upper_bound(name, &[("max_ratio_20", a.max)], 0.25, (b.max - a.max).abs() / a.max, 0.0));
    }
    Ok(out)
}

fn linear_estimate(seed: u64) -> Result<Vec<VerificationReport>, CliError> {
    let params = SobolevParams::new(0.0, 0.4, 0.4, 1);
    let solver = LinearSolverConfig::default();
    let grid = |points: usize| -> Result<Grid, CliError> {
        Ok(Grid::new(vec![UniformAxis::linspace(0.0, 6.0, points)?, UniformAxis::midpoints(0.0, 0.4, points)?])?)
    };
    let ens = |count| packet_ensemble(1, count, seed, &PacketRanges::default(), 12.0, 0.4);
    let a = linear_estimate_ratio(&ens(20), &grid(32)?, &params, LinearEstimate::XLow, &solver)?;
    let b = linear_estimate_ratio(&ens(40), &grid(32)?, &params, LinearEstimate::XLow, &solver)?;
    let c = linear_estimate_ratio(&ens(20), &grid(64)?, &params, LinearEstimate::XLow, &solver)?;
    let p = [("n", 1.0), ("s", 0.0), ("b", 0.4), ("max_ratio", a.max)];
    Ok(vec![
        VerificationReport::upper_bound("linear-estimate-ensemble-change", &p, 0.2, (b.max - a.max).abs() / a.max, 0.0),
        VerificationReport::upper_bound("linear-estimate-refinement-change", &p, 0.2, (c.max - a.max).abs() / a.max, 0.0),
    ])
}

fn norm_monotonicity(seed: u64) -> Result<Vec<VerificationReport>, CliError> {
    use fokas_core::norms::{xsb_norm, ysb_norm};
    let g = Grid::new(vec![UniformAxis::new(-7.5, 0.5, 31)?, UniformAxis::new(-30.0, 2.0, 31)?])?;
    let fields = field_ensemble(&EnsembleConfig { sample_count: 50, seed, family: FieldFamily::ModulatedBumps }, &g)?;
    let grid_s = [-1.0, 0.0, 0.5, 1.5];
    let grid_b = [-0.4, 0.0, 0.25, 0.45];
    let mut violations = 0usize;
    for f in &fields {
        for w in grid_s.windows(2) {
            for &b in &grid_b {
                violations += usize::from(xsb_norm(f, w[1], b)? < xsb_norm(f, w[0], b)? * (1.0 - 1e-13));
                violations += usize::from(ysb_norm(f, w[1], b)? < ysb_norm(f, w[0], b)? * (1.0 - 1e-13));
            }
        }
        for w in grid_b.windows(2) {
            for &s in &grid_s {
                violations += usize::from(xsb_norm(f, s, w[1])? < xsb_norm(f, s, w[0])? * (1.0 - 1e-13));
                violations += usize::from(ysb_norm(f, s, w[1])? < ysb_norm(f, s, w[0])? * (1.0 - 1e-13));
            }
        }
    }
    Ok(vec![VerificationReport::compare("norm-monotonicity-violations", &[("fields", 50.0)], 0.0, violations as f64, 0.0)])
}
