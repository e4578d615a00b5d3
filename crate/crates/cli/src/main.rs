// SPDX-License-Identifier: MIT OR Apache-2.0

use clap::Parser;
use kseg_cli::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(e) = kseg_cli::run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
