use std::process::ExitCode;

use clap::Parser;
use thzlink::cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match thzlink::run(&cli) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let msg = format!("{e:#}").replace(['\n', '\r'], " ");
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
