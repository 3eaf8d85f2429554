//! `qaran`: tables of baseband workload, power, qubit budgets, savings and
//! availability years, driven by a TOML config.
//!
//! Exit codes: 0 success, 1 config or usage error, 2 model-domain error,
//! 3 success with warnings.

pub mod commands;
pub mod config;
pub mod paper;
pub mod report;
pub mod sweep;
pub mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use config::{ConfigError, RunConfig, CONFIG_ENV};
use paper::PaperTable;
use report::Outcome;
use sweep::SweepSpec;
use table::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_MODEL: i32 = 2;
pub const EXIT_WARNINGS: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qaran", version, about = "Quantum-annealer vs CMOS baseband power and cost tables")]
pub struct Cli {
    /// TOML config file.
    #[arg(long, global = true, env = CONFIG_ENV, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output format; overrides `output.format` in the config.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Emit a reference table instead of the config's scenarios.
    #[arg(long, global = true, value_enum, value_name = "NAME")]
    pub paper_table: Option<PaperTable>,
    /// Write the table here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// `axis=v1,v2,..` or `axis=start:stop:step`; axes bandwidth, antennas, samples.
    #[arg(long, global = true, value_name = "AXIS=VALUES")]
    pub sweep: Vec<SweepSpec>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Per-task TOPS of each scenario.
    Targets,
    /// CMOS and QA power breakdown.
    Power,
    /// Qubit budget against refrigerator capacity.
    Qubits,
    /// OpEx and CO2 savings over the configured horizons.
    Economics,
    /// Historical device sizes and milestone availability years.
    Timeline,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Targets => "targets",
            Command::Power => "power",
            Command::Qubits => "qubits",
            Command::Economics => "economics",
            Command::Timeline => "timeline",
        }
    }

    fn paper_tables(self) -> &'static [PaperTable] {
        match self {
            Command::Targets => &[PaperTable::Targets],
            Command::Power => &[PaperTable::Powerbenefit],
            Command::Qubits => &[PaperTable::QubitsTime, PaperTable::Energy, PaperTable::Readout],
            Command::Economics => &[PaperTable::Costsavings],
            Command::Timeline => &[],
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("model error for {subject}: {source}")]
    Model {
        subject: String,
        source: qaran_core::ModelError,
    },
    #[error("model error: no valid grid points ({0} rejected)")]
    NoValidPoints(usize),
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Usage(_) | CliError::Output { .. } => EXIT_CONFIG,
            CliError::Model { .. } | CliError::NoValidPoints(_) => EXIT_MODEL,
        }
    }
}

/// Loads the config, applies sweeps and evaluates the subcommand.
pub fn execute(cli: &Cli) -> Result<(Outcome, Format), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    sweep::apply(&mut cfg, &cli.sweep);
    let format = cli.format.or(cfg.format).unwrap_or_default();

    let outcome = match cli.paper_table {
        Some(t) => {
            if !cli.command.paper_tables().contains(&t) {
                let allowed: Vec<_> = cli.command.paper_tables().iter().map(|t| t.name()).collect();
                return Err(CliError::Usage(format!(
                    "--paper-table {} does not belong to '{}' (allowed: {})",
                    t.name(),
                    cli.command.name(),
                    if allowed.is_empty() { "none".into() } else { allowed.join(", ") }
                )));
            }
            paper::render(t, &cfg)?
        }
        None => match cli.command {
            Command::Targets => commands::targets(&cfg)?,
            Command::Power => commands::power(&cfg)?,
            Command::Qubits => commands::qubits(&cfg)?,
            Command::Economics => commands::economics(&cfg)?,
            Command::Timeline => commands::timeline(&cfg)?,
        },
    };
    Ok((outcome, format))
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match emit(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "qaran: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let (outcome, format) = execute(cli)?;
    let text = outcome.table.render(format);
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Output {
            path: path.display().to_string(),
            source,
        })?,
        None => out.write_all(text.as_bytes()).map_err(|source| CliError::Output {
            path: "stdout".into(),
            source,
        })?,
    }
    for w in &outcome.warnings {
        let _ = writeln!(err, "{}", w.to_json_line());
    }
    Ok(if outcome.warnings.is_empty() { EXIT_OK } else { EXIT_WARNINGS })
}
