//! Command-line front end: solves, Jacobian cross-checks, the Hadamard
//! property suite and basis-size sweeps, with JSON, CSV or table output.
//!
//! Exit codes: 0 success, 1 failed check or internal error, 2 no
//! convergence, 3 invalid configuration.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;

use crate::args::{Cli, Command, RunArgs};
use crate::config::{CommandKind, RunConfig, Settings};
pub use crate::error::{exit, CliError};

/// Resolves parsed arguments, reading `--config` if given.
pub fn configure(cli: Cli) -> Result<RunConfig, CliError> {
    let (command, args) = match cli.command {
        Command::Solve(a) => (CommandKind::Solve, a),
        Command::JacobianCheck(a) => (CommandKind::JacobianCheck, a),
        Command::Properties(a) => (CommandKind::Properties, a),
        Command::Compare(a) => (CommandKind::Compare, a),
        Command::List(l) => (
            CommandKind::List,
            RunArgs {
                output: l.output,
                ..Default::default()
            },
        ),
    };
    let flags = Settings::from_flags(&args)?;
    let file = match &args.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    RunConfig::resolve(command, flags.or(file))
}

/// Runs the tool on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::parse(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    exit::SUCCESS
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    exit::INVALID_CONFIG
                }
            };
        }
    };
    let outcome = configure(cli).and_then(|cfg| commands::execute(&cfg));
    match outcome {
        Ok(o) => {
            let written = stdout.write_all(o.stdout.as_bytes()).and_then(|_| stdout.flush());
            let _ = stderr.write_all(o.stderr.as_bytes());
            match written {
                Ok(()) => o.code,
                Err(_) => exit::FAILURE,
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
