use std::io;
use std::process::ExitCode;

use clap::Parser;
use neqr_cipher::cli::{exit_code, run_command, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match run(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err.downcast_ref::<neqr_cipher::Error>().map_or(1, exit_code);
            ExitCode::from(code)
        }
    }
}

fn run(config: &RunConfig) -> anyhow::Result<()> {
    let stdout = io::stdout();
    run_command(config, &mut stdout.lock())?;
    Ok(())
}
