use std::process::ExitCode;

use clap::Parser;

use bitretrieval_cli::app::{configure_threads, run, Cli};

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(&cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
