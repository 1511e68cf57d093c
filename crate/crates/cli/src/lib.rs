//! Command-line front end for `sl2cb`.

// `!(x < bound)` is used on purpose so NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod suites;
pub mod table;

use clap::Parser;

pub use config::{Args, Command, Format, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Compute(#[from] sl2cb::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) | CliError::Compute(_) => 1,
        }
    }
}

/// Runs a validated configuration.  `Ok(false)` means a check failed.
pub fn execute(cfg: &RunConfig) -> Result<bool, CliError> {
    match cfg.command {
        Command::Verify => commands::run_verify(cfg),
        Command::Table => commands::run_table(cfg),
        Command::Sweep => commands::run_sweep(cfg),
        Command::Sphfun => commands::run_sphfun(cfg),
        Command::Decompose => commands::run_decompose(cfg),
    }
}

/// Full entry point returning the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = RunConfig::from_args(&args).and_then(|cfg| execute(&cfg));
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("sl2cb: {e}");
            e.exit_code()
        }
    }
}
