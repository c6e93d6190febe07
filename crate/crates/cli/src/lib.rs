//! Library surface of the command-line harness, so integration tests can
//! drive the commands in-process.

pub mod args;
pub mod commands;
pub mod common;
pub mod error;
pub mod manifest;

use args::{Cli, Command};
use error::CliResult;

/// Dispatch a parsed command line. Returns the process exit code for the
/// success path (`verify` exits 1 when a property fails).
pub fn run(cli: &Cli) -> CliResult<i32> {
    match &cli.command {
        Command::Sample(args) => commands::sample::run(args).map(|_| 0),
        Command::Solve(args) => commands::solve::run(args).map(|_| 0),
        Command::Evaluate(args) => commands::evaluate::run(args).map(|_| 0),
        Command::Bruteforce(args) => commands::bruteforce::run(args).map(|_| 0),
        Command::Verify(args) => commands::verify::run(args),
        Command::Bench(args) => commands::bench::run(args).map(|_| 0),
    }
}
