use std::process::ExitCode;

use clap::Parser;
use dct16::cli::{diagnostic, exit_code, run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = RunConfig::from_cli(cli).and_then(|config| run(&config, &mut std::io::stdout()));
    match outcome {
        Ok(summary) => {
            for s in &summary.skipped {
                eprintln!("skipped: {}: {}", s.name, s.reason);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", diagnostic(&e));
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
