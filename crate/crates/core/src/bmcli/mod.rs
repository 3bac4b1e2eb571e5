//! Command-line orchestration behind the `bm` binary: validated run
//! configuration, one function per subcommand, and a versioned report
//! document rendered as text or JSON.
//!
//! Exit codes: 0 success, 1 invalid input or failed check, 2 inconclusive
//! (precision budget exhausted), 3 nonzero H¹ without chart data.

mod args;
mod commands;
mod config;
mod document;
mod verify;

pub use args::{Cli, Command, CommonArgs, Format, LocalArgs, ScanArgs, SurfaceArgs};
pub use commands::{cmd_h1, cmd_lines, cmd_local, cmd_obstruct, cmd_scan};
pub use config::{parse_coefficients, parse_range, PrecisionOverrides, RunConfig};
pub use document::{
    invariant_set, Agreement, Check, CheckStatus, ClassSummary, CocycleValue, CommandResult, H1Report, InputEcho, LineEntry,
    LinesReport, LocalReport, ObstructReport, ReportDocument, ScanMismatch, ScanReport, SolvabilityEntry, Status, VerifyReport,
    REPORT_SCHEMA_VERSION,
};
pub use verify::{cmd_verify_paper, verification_checks};

use crate::azumaya::{AzumayaError, PRECISION_CAP_ENV};
use crate::calibrate::CalibrateError;
use crate::eisenstein::EisensteinError;
use crate::lines27::LinesError;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Internal(String),
    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Lines(#[from] LinesError),
    #[error(transparent)]
    Azumaya(#[from] AzumayaError),
    #[error(transparent)]
    Calibrate(#[from] CalibrateError),
    #[error(transparent)]
    Eisenstein(#[from] EisensteinError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Azumaya(AzumayaError::MissingCharts { .. }) => Status::MissingCharts.exit_code(),
            CliError::Azumaya(AzumayaError::NoStabilization { .. } | AzumayaError::EnumerationBudget { .. }) => {
                Status::Inconclusive.exit_code()
            }
            _ => Status::Failed.exit_code(),
        }
    }
}

fn echo(name: &str, cfg: &RunConfig) -> InputEcho {
    let mut precision = std::collections::BTreeMap::new();
    if let Some(n) = cfg.precision.all {
        precision.insert("all".to_string(), n);
    }
    for (p, n) in &cfg.precision.per_prime {
        precision.insert(p.to_string(), *n);
    }
    let uses_policy = matches!(name, "local" | "obstruct" | "verify-paper");
    InputEcho {
        coefficients: cfg.coefficients.map(|c| c.as_array()),
        places: cfg.places.clone(),
        precision,
        charts: cfg.charts.as_ref().map(|p| p.display().to_string()),
        range: cfg.range.map(|(lo, hi)| format!("{lo}..{hi}")),
        precision_cap: if uses_policy { std::env::var(PRECISION_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()) } else { None },
    }
}

/// Runs one subcommand and assembles its report.
pub fn run(cli: &Cli) -> Result<(ReportDocument, RunConfig), CliError> {
    let start = Instant::now();
    let (name, cfg) = match &cli.command {
        Command::H1(a) => ("h1", RunConfig::from_surface(a)?),
        Command::Lines(a) => ("lines", RunConfig::from_surface(a)?),
        Command::Scan(a) => ("scan", RunConfig::from_scan(a)?),
        Command::Local(a) => ("local", RunConfig::from_local(a)?),
        Command::Obstruct(a) => ("obstruct", RunConfig::from_local(a)?),
        Command::VerifyPaper(a) => ("verify-paper", RunConfig::from_common(a)?),
    };
    let (result, status) = match &cli.command {
        Command::H1(_) => cmd_h1(&cfg)?,
        Command::Lines(_) => cmd_lines(&cfg)?,
        Command::Scan(_) => cmd_scan(&cfg)?,
        Command::Local(_) => cmd_local(&cfg)?,
        Command::Obstruct(_) => cmd_obstruct(&cfg)?,
        Command::VerifyPaper(_) => cmd_verify_paper(cfg.jobs)?,
    };
    let doc = ReportDocument {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: name.to_string(),
        input: echo(name, &cfg),
        status,
        result,
        timing_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
    };
    Ok((doc, cfg))
}

/// Renders `doc` in the configured format to `--out` or stdout.
pub fn emit(doc: &ReportDocument, cfg: &RunConfig) -> Result<(), CliError> {
    let text = match cfg.format {
        Format::Json => doc.to_json(),
        Format::Text => doc.to_text(),
    };
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
