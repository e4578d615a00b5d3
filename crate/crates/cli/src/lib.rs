// SPDX-License-Identifier: MIT OR Apache-2.0

//! Command-line front end for the `kseg` library: segment CSV signals,
//! generate synthetic corpora, benchmark algorithms and score results.

#![forbid(unsafe_code)]

pub mod algo;
pub mod args;
pub mod bench;
pub mod commands;
pub mod error;
pub mod io;

pub use algo::{AlgoOptions, Algorithm};
pub use args::{Cli, Command};
pub use bench::EvalReport;
pub use error::{CliError, Result};

/// Dispatches a parsed command line.
pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Segment(a) => commands::segment(a).map(drop),
        Command::Generate(a) => commands::generate(a).map(drop),
        Command::Bench(a) => bench::bench(a).map(drop),
        Command::Eval(a) => commands::eval(a).map(drop),
    }
}
