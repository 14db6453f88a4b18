use std::process::ExitCode;

use clap::Parser;

use gpmc_cli::args::Cli;
use gpmc_cli::{run, Exit};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(exit) => ExitCode::from(exit as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(Exit::InputError as u8)
        }
    }
}
