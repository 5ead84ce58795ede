//! `qbern`: evaluate, tabulate and verify Bernstein-type polynomials.

mod args;
mod eval;
mod output;
mod parse;
mod table;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Failure classes, mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unknown names or out-of-domain parameters (exit 2).
    Usage(String),
    /// Output could not be written (exit 1).
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<qbern_core::Error> for CliError {
    fn from(e: qbern_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Eval(a) => eval::run(&a),
        Command::Table(a) => table::run_table(&a),
        Command::Approx(a) => table::run_approx(&a),
        Command::Verify(a) => table::run_verify(&a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qbern: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
