//! Command-line front end. Data goes to stdout, diagnostics to stderr.

mod args;
mod check;
mod commands;
mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::{CheckArgs, Cli, Command, Format, InductiveArgs, ModelArgs, ModelKind, VoteArgs};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_COMPATIBILITY: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
    /// A check or reproduction did not match. The report is still printed.
    Mismatch {
        report: String,
        reason: String,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Mismatch { .. } => EXIT_MISMATCH,
            Self::Lib(e) => match e {
                Error::Compatibility(_) => EXIT_COMPATIBILITY,
                Error::Parse(_)
                | Error::Domain { .. }
                | Error::Parameter { .. }
                | Error::Sample { .. }
                | Error::DegenerateSplit { .. }
                | Error::DegenerateSample(_) => EXIT_USAGE,
                Error::Truncation { .. } | Error::Quadrature { .. } | Error::Numeric(_) => EXIT_NUMERIC,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(m) | Self::Mismatch { reason: m, .. } => f.write_str(m),
            Self::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Lib(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Vote(a) => commands::vote(a, cli.format),
        Command::Inductive(a) => commands::inductive(a, cli.format),
        Command::DemoSchervish => commands::demo_schervish(cli.format),
        Command::Check(a) => check::run(a, cli.format),
    };
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(CliError::Mismatch { report, reason }) => {
            let _ = out.write_all(report.as_bytes());
            let _ = writeln!(err, "error: {reason}");
            EXIT_MISMATCH
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
