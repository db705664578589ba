//! `nestlab --config run.json [--seed N] [--output csv|json] [--out path]`
//!
//! Exit codes: 0 every check passed, 2 invalid input, 3 a check failed.

mod commands;
mod config;
mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use nestlab::parallel::Execution;

use crate::config::{Config, Format};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("invalid config: {0}")]
    Parse(String),
    #[error("sampled experiments need a seed (config \"seed\" or --seed)")]
    MissingSeed,
    #[error(transparent)]
    Lib(#[from] nestlab::Error),
}

#[derive(Debug, Parser)]
#[command(name = "nestlab", version, about = "Run a nestlab experiment from a JSON config")]
struct Args {
    #[arg(long)]
    config: PathBuf,
    /// Master seed; overrides the config.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    output: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(args: &Args) -> Result<bool, CliError> {
    let cfg = Config::load(&args.config)?;
    let ctx = commands::Context { base: &cfg.base, seed: args.seed.or(cfg.seed), exec: Execution::default() };
    let report = commands::run(&cfg.command, &ctx)?;
    let bytes = report::render(&report, args.output.or(cfg.output).unwrap_or(Format::Csv))?;
    match &args.out {
        Some(path) => fs::write(path, &bytes).map_err(|e| CliError::Io(path.clone(), e))?,
        None => std::io::stdout().write_all(&bytes).map_err(|e| CliError::Io("<stdout>".into(), e))?,
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("nestlab: property violation found");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("nestlab: {e}");
            ExitCode::from(2)
        }
    }
}
