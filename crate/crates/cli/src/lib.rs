//! Command-line front end for the dipolenet simulator.
//!
//! Subcommands: `sweep {air-percentage | height | air-tx}`, `pattern`,
//! `single`, and `replay` (re-runs a sweep from its manifest).

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;
pub mod output;

pub use error::CliError;

use clap::Parser;
use std::ffi::OsString;

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match commands::dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
