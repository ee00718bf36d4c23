use std::process::ExitCode;

use clap::Parser;
use smashprod_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match smashprod_cli::run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.body);
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
