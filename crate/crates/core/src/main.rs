use std::process::ExitCode;

use clap::Parser;
use splitci::cli::{run, Cli};
use splitci::Error;

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        // Out-of-range settings are usage errors, like unknown flags.
        Err(e @ Error::Config(_)) => {
            eprintln!("splitci: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("splitci: {e}");
            ExitCode::from(1)
        }
    }
}
