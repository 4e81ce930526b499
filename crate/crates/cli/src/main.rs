//! `fokas`: solves, norms and verification suites for the half-space Schrödinger problem.

mod checks;
mod commands;
mod config;
mod presets;
mod tabulated;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fokas_core::FokasError;
use serde_json::json;

use crate::commands::Outcome;
use crate::config::RunConfig;
use crate::presets::Preset;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] FokasError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input, 1 for numerics that failed on valid input.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(e) => match e {
                FokasError::Domain(_)
                | FokasError::Shape(_)
                | FokasError::Config(_)
                | FokasError::NoOp(_)
                | FokasError::UnsupportedRegularity { .. } => 2,
                FokasError::Evaluation(_) | FokasError::Numerical(_) | FokasError::NonContraction { .. } => 1,
            },
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "fokas", version, about = "Half-space Schrödinger solves and estimate verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the linear problem; writes solution.csv and summary.json.
    SolveLinear(Common),
    /// Solve the cubic problem by Picard iteration; writes solution.csv, convergence.json, summary.json.
    SolveNls(Common),
    /// Data and solution norms; writes norms.json.
    Norm(Common),
    /// Run verification checks; writes report.json.
    Verify(Common),
    /// Scaling scan for the box counterexample; writes counterexample.csv and report.json.
    Counterexample(Common),
}

#[derive(Args)]
struct Common {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    bprime: Option<f64>,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Check id for `verify`; repeatable.
    #[arg(long = "check")]
    checks: Vec<String>,
}

impl Common {
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.n {
            cfg.n = v;
        }
        if let Some(v) = self.s {
            cfg.s = v;
        }
        if let Some(v) = self.b {
            cfg.b = v;
        }
        if let Some(v) = self.bprime {
            cfg.b_prime = Some(v);
        }
        if let Some(v) = self.preset {
            cfg.preset = v;
        }
        if !self.checks.is_empty() {
            cfg.checks = self.checks.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn write_files(dir: &Path, files: &[(String, String)]) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    for (name, body) in files {
        std::fs::write(dir.join(name), body)?;
    }
    Ok(())
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("FOKAS_THREADS") else { return Ok(()) };
    let k: usize = v
        .parse()
        .ok()
        .filter(|&k| k > 0)
        .ok_or_else(|| CliError::Config(format!("FOKAS_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(k)
        .build_global()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    configure_threads()?;
    let (common, f): (&Common, fn(&RunConfig) -> Result<Outcome, CliError>) = match &cli.command {
        Command::SolveLinear(c) => (c, commands::solve_linear),
        Command::SolveNls(c) => (c, commands::solve_nonlinear),
        Command::Norm(c) => (c, commands::norm),
        Command::Verify(c) => (c, commands::verify),
        Command::Counterexample(c) => (c, commands::counterexample),
    };
    let cfg = common.resolve()?;
    f(&cfg)
}

fn out_dir(cli: &Cli) -> &Path {
    match &cli.command {
        Command::SolveLinear(c) | Command::SolveNls(c) | Command::Norm(c) | Command::Verify(c) | Command::Counterexample(c) => &c.out,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let dir = out_dir(&cli).to_path_buf();
    match run(&cli).and_then(|o| write_files(&dir, &o.files).map(|_| o.ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("fokas: at least one check failed; see {}", dir.display());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("fokas: {e}");
            let code = e.exit_code();
            if code == 1 {
                let body = json!({ "error": e.to_string(), "exit_code": code });
                let text = serde_json::to_string_pretty(&body).unwrap_or_default() + "\n";
                if let Err(w) = write_files(&dir, &[("error.json".into(), text)]) {
                    eprintln!("fokas: could not write error.json: {w}");
                }
            }
            ExitCode::from(code)
        }
    }
}
