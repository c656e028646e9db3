//! Command-line front end: one subcommand per sweep, CSV on stdout (or
//! `--out`), fit summaries as `#` trailer lines.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 when any computation
//! fails (including individual rows).

mod args;
mod commands;
mod csv;
mod grid;
mod validate;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command};
pub use csv::format_significant;
pub use grid::{GridSpec, Scale};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_FAILURE: u8 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Compute(msg) => write!(f, "computation failed: {msg}"),
        }
    }
}

impl From<chainstate::Error> for CliError {
    fn from(e: chainstate::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

/// Result of a subcommand: the document to emit and whether any part of
/// it failed.
pub struct Report {
    pub body: String,
    pub failed: bool,
    /// Notes for stderr.
    pub notes: Vec<String>,
}

/// Parses `args`, runs the subcommand and writes its output. Returns the
/// process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let out_path = cli.out.clone();
    match commands::execute(&cli) {
        Ok(report) => {
            for note in &report.notes {
                let _ = writeln!(err, "{note}");
            }
            let written = match out_path {
                Some(path) => std::fs::write(&path, report.body.as_bytes())
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out
                    .write_all(report.body.as_bytes())
                    .map_err(|e| format!("cannot write output: {e}")),
            };
            if let Err(msg) = written {
                let _ = writeln!(err, "{msg}");
                return EXIT_FAILURE;
            }
            if report.failed {
                EXIT_FAILURE
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Compute(_) => EXIT_FAILURE,
            }
        }
    }
}
