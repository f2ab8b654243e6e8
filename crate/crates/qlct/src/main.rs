use std::process::ExitCode;

use clap::Parser;
use qlct::cli::{self, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli::configure_threads(std::env::var("QLCT_THREADS").ok().as_deref()).and_then(|()| cli::run(cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qlct: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
