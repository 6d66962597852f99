//! `risplan`: scenario reports, aperture pattern and squint sweeps, and
//! switch-technology comparisons from a JSON run configuration.

pub mod commands;
pub mod config;
mod render;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

pub use commands::{execute, Rendered};
pub use config::{Format, MethodName, RunConfig, SCHEMA_V1};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Solver(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn field(field: impl AsRef<str>, detail: impl AsRef<str>) -> Self {
        CliError::Validation(format!("invalid {}: {}", field.as_ref(), detail.as_ref()))
    }

    /// Attach a config path prefix to a library error.
    pub fn within(prefix: &str, e: ris_core::Error) -> Self {
        match e {
            ris_core::Error::Invalid { field, detail } => CliError::field(format!("{prefix}.{field}"), detail),
            ris_core::Error::Domain { .. } => CliError::Validation(format!("{prefix}: {e}")),
            ris_core::Error::Solver(_) => CliError::Solver(format!("{prefix}: {e}")),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 1,
            CliError::Solver(_) => 2,
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "risplan",
    version,
    about = "RIS link planning, aperture patterns and switch comparisons"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Run configuration (JSON)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output file, or directory for per-pattern CSV files
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Overrides the config's bandwidth_method
    #[arg(long, global = true, value_enum)]
    pub bandwidth_method: Option<MethodArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Panel size, switch count, bandwidth, SNR and capacity per scenario and coverage angle
    Report,
    /// Radiation pattern cuts per phase resolution and frequency
    Pattern,
    /// 3 dB squint bandwidth along a panel-side or angle sweep
    Squint,
    /// Static power and reconfiguration energy per switch technology
    Power,
    /// Dump the switch catalog
    Techs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    Numeric,
    Analytic,
}

impl From<MethodArg> for MethodName {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Numeric => MethodName::Numeric,
            MethodArg::Analytic => MethodName::Analytic,
        }
    }
}

/// Load the config (if any), run the command and write its output.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(path) => Some(RunConfig::load(path)?),
        None if cli.command == Command::Techs => None,
        None => return Err(CliError::field("--config", "a run configuration is required")),
    };
    let base_dir = cli
        .config
        .as_deref()
        .and_then(Path::parent)
        .map(Path::to_path_buf)
        .unwrap_or_default();
    let out = cli
        .out
        .clone()
        .or_else(|| config.as_ref().and_then(|c| c.output_path().map(Path::to_path_buf)));
    let rendered = execute(
        cli.command,
        config.as_ref(),
        &base_dir,
        cli.format,
        cli.bandwidth_method.map(Into::into),
    )?;
    rendered.write(out.as_deref(), stdout)
}
