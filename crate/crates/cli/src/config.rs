use std::path::{Path, PathBuf};
use std::sync::Arc;

use fokas_core::fokas::{LinearSolverConfig, ProblemData};
use fokas_core::grid::{Grid, UniformAxis};
use fokas_core::nls::{NlsGrid, Sign, SmallnessGate};
use fokas_core::norms::SobolevParams;
use serde::{Deserialize, Serialize};

use fokas_core::oracle::WholeSpaceSolution;

use crate::presets::Preset;
use crate::tabulated::Table;
use crate::CliError;

/// `count` points from `lo` to `hi` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn axis(&self, name: &str) -> Result<UniformAxis, CliError> {
        if self.count < 2 || !(self.hi > self.lo) {
            return Err(CliError::Config(format!("axis {name} needs count >= 2 and hi > lo")));
        }
        UniformAxis::linspace(self.lo, self.hi, self.count).map_err(CliError::from)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    /// Used for every tangential axis when n ≥ 2.
    pub x_prime: AxisSpec,
    pub x_n: AxisSpec,
    pub t: AxisSpec,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            x_prime: AxisSpec { lo: -4.0, hi: 4.0, count: 32 },
            x_n: AxisSpec { lo: 0.0, hi: 4.0, count: 64 },
            t: AxisSpec { lo: 0.05, hi: 0.35, count: 64 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NlsSpec {
    pub sign: Sign,
    pub max_iterations: usize,
    pub tolerance: f64,
    pub smallness: SmallnessGate,
}

impl Default for NlsSpec {
    fn default() -> Self {
        Self { sign: Sign::Plus, max_iterations: 30, tolerance: 1e-8, smallness: SmallnessGate::Warn }
    }
}

/// CSV tables replacing the preset's initial or boundary data.
///
/// u0 columns: x′…, x_n, re, im. g0 columns: x′…, t, re, im.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DataFiles {
    pub u0: Option<PathBuf>,
    pub g0: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub preset: Preset,
    pub data_files: DataFiles,
    pub amplitude: f64,
    pub n: usize,
    pub s: f64,
    pub b: f64,
    /// Defaults to b.
    pub b_prime: Option<f64>,
    pub seed: u64,
    /// Truncation length L and horizon T of the problem.
    pub length: f64,
    pub time: f64,
    pub grid: GridSpec,
    pub linear: LinearSolverConfig,
    pub nls: NlsSpec,
    /// Check ids for `verify`; empty means every check.
    pub checks: Vec<String>,
    /// Scales N for `counterexample`.
    pub scales: Vec<u32>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            preset: Preset::GaussianRestriction,
            data_files: DataFiles::default(),
            amplitude: 1.0,
            n: 1,
            s: 0.0,
            b: 0.4,
            b_prime: None,
            seed: 0,
            length: 10.0,
            time: 0.4,
            grid: GridSpec::default(),
            linear: LinearSolverConfig::default(),
            nls: NlsSpec::default(),
            checks: Vec::new(),
            scales: vec![4, 8, 16, 32],
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("malformed config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(1..=3).contains(&self.n) {
            return Err(CliError::Config(format!("n = {} outside 1..=3", self.n)));
        }
        for (name, v) in [("s", self.s), ("b", self.b), ("amplitude", self.amplitude), ("length", self.length), ("time", self.time)] {
            if !v.is_finite() {
                return Err(CliError::Config(format!("{name} must be finite")));
            }
        }
        self.linear.validate()?;
        self.problem_data()?;
        Ok(())
    }

    /// Preset data with any tabulated fields swapped in.
    pub fn problem_data(&self) -> Result<ProblemData, CliError> {
        let mut data = self.preset.data(self.n, self.amplitude, self.length, self.time);
        if let Some(p) = &self.data_files.u0 {
            let tab = Table::load(p, self.n)?;
            data.u0 = Arc::new(move |xp, x| {
                let mut c = xp.to_vec();
                c.push(x);
                tab.eval(&c)
            });
        }
        if let Some(p) = &self.data_files.g0 {
            let tab = Table::load(p, self.n)?;
            data.g0 = Arc::new(move |xp, t| {
                let mut c = xp.to_vec();
                c.push(t);
                tab.eval(&c)
            });
        }
        Ok(data)
    }

    /// Closed form, unless tabulated data replaced the preset's.
    pub fn exact(&self) -> Option<WholeSpaceSolution> {
        if self.data_files.u0.is_some() || self.data_files.g0.is_some() {
            return None;
        }
        self.preset.exact(self.n, self.amplitude)
    }

    pub fn params(&self) -> SobolevParams {
        SobolevParams::new(self.s, self.b, self.b_prime.unwrap_or(self.b), self.n)
    }

    /// (x′…, x_n, t) grid for the linear solver.
    pub fn solution_grid(&self) -> Result<Grid, CliError> {
        let mut axes = Vec::with_capacity(self.n + 1);
        for _ in 0..self.n - 1 {
            axes.push(self.grid.x_prime.axis("x_prime")?);
        }
        axes.push(self.grid.x_n.axis("x_n")?);
        axes.push(self.grid.t.axis("t")?);
        Ok(Grid::new(axes)?)
    }

    /// Iteration grid: times 0, Δt, …, t.hi with t.count points.
    pub fn nls_grid(&self) -> Result<NlsGrid, CliError> {
        if self.grid.x_n.lo != 0.0 {
            return Err(CliError::Config("the nonlinear solver needs x_n.lo = 0".into()));
        }
        let mut spatial = Vec::with_capacity(self.n);
        for _ in 0..self.n - 1 {
            spatial.push(self.grid.x_prime.axis("x_prime")?);
        }
        spatial.push(self.grid.x_n.axis("x_n")?);
        let t = self.grid.t;
        if t.count < 2 || !(t.hi > 0.0) {
            return Err(CliError::Config("time axis needs count >= 2 and hi > 0".into()));
        }
        let steps = t.count - 1;
        Ok(NlsGrid::new(spatial, t.hi / steps as f64, steps))
    }
}
