//! Experiment runner for the NEGF variational linear solver.
//!
//! Each subcommand names an experiment kind and reads a JSON
//! [`ExperimentConfig`]; results are written as CSV files.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{validate_config, ExperimentConfig, ExperimentKind};
pub use error::CliError;
pub use experiments::{run_experiment, Report};

#[derive(Debug, Parser)]
#[command(name = "vqls-negf", version, about = "Variational linear solver experiments for 1D NEGF transport")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON experiment configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; overrides the config.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Master seed; overrides the config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Exit with status 4 when a convergence gate fails.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Worker threads for restarts and energy sweeps.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Check the config and exit without running.
    #[arg(long, global = true)]
    pub validate_only: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    SolveSingle,
    CompareCosts,
    SweepAlpha,
    CompareAnsatz,
    SolveParallel,
    OracleSweep,
}

impl From<Command> for ExperimentKind {
    fn from(c: Command) -> Self {
        match c {
            Command::SolveSingle => ExperimentKind::SolveSingle,
            Command::CompareCosts => ExperimentKind::CompareCosts,
            Command::SweepAlpha => ExperimentKind::SweepAlpha,
            Command::CompareAnsatz => ExperimentKind::CompareAnsatz,
            Command::SolveParallel => ExperimentKind::SolveParallel,
            Command::OracleSweep => ExperimentKind::OracleSweep,
        }
    }
}

/// What a successful invocation produced.
#[derive(Debug)]
pub enum Outcome {
    Validated(PathBuf),
    Ran(Box<Report>),
}

/// Loads the config named on the command line and applies the overrides.
pub fn resolve_config(cli: &Cli) -> Result<(ExperimentConfig, ExperimentKind, PathBuf), CliError> {
    let kind = ExperimentKind::from(cli.command);
    let path = cli.config.as_ref().ok_or_else(|| CliError::Config(vec!["--config: required".into()]))?;
    let mut cfg = ExperimentConfig::load(path)?;
    if let Some(k) = cfg.experiment {
        if k != kind {
            return Err(CliError::Config(vec![format!(
                "experiment: config is for {} but {} was requested",
                k.name(),
                kind.name()
            )]));
        }
    }
    cfg.experiment = Some(kind);
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    let violations = cfg.violations();
    if !violations.is_empty() {
        return Err(CliError::Config(violations));
    }
    let out = cli
        .out
        .clone()
        .or_else(|| cfg.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out").join(kind.name()));
    Ok((cfg, kind, out))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let (cfg, kind, out) = resolve_config(cli)?;
    if cli.validate_only {
        return Ok(Outcome::Validated(cli.config.clone().unwrap_or_default()));
    }
    let report = match cli.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Config(vec![format!("--threads: {e}")]))?;
            pool.install(|| run_experiment(&cfg, kind, &out))?
        }
        None => run_experiment(&cfg, kind, &out)?,
    };
    if cli.strict && !report.gate_failures.is_empty() {
        print!("{}", report.summary);
        return Err(CliError::Gate(report.gate_failures.clone()));
    }
    Ok(Outcome::Ran(Box::new(report)))
}
