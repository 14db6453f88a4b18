//! Library half of the `gpmc` command-line tool: argument types, command
//! implementations and report validation, exposed so tests can drive them
//! without spawning the binary.

pub mod args;
mod commands;
mod input;
pub mod report;
pub mod validate;

use std::fs;
use std::io::Write as _;

use thiserror::Error;

use crate::args::{Cli, Command};

pub use commands::Output;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] gpmc::Error),
    #[error("{0}")]
    Input(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Mismatch = 1,
    InputError = 2,
}

/// Runs one command and returns its rendered output without writing it.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Topology(cmd) => commands::topology(cmd),
        Command::Inject(cmd) => commands::inject(cmd),
        Command::Diagnose(cmd) => commands::diagnose(cmd),
        Command::Diagnosability(cmd) => commands::diagnosability(cmd),
        Command::VerifyTheorems(cmd) => commands::verify_theorems(cmd),
    }
}

/// Runs one command and writes its output to `--output` or stdout.
pub fn run(cli: &Cli) -> Result<Exit, CliError> {
    let out = execute(cli)?;
    match &out.path {
        Some(path) => fs::write(path, &out.text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(out.exit)
}
