//! File and command-line front end for `thzlink-core`: run configuration,
//! sweep execution and CSV/JSON reports.

pub mod cli;
pub mod commands;
pub mod config;
pub mod report;
pub mod resolve;
pub mod table;

use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};

use cli::{Cli, Command};
use report::{write_report, ReportEnvelope};
use resolve::{resolve, Resolved};

/// Runs a parsed command line and returns the files written.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>> {
    let common = cli.command.common();
    let resolved = resolve(&cli.command.to_config(), common.config.as_deref())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.threads)
        .build()
        .context("starting worker threads")?;
    let outputs = pool.install(|| build(&cli.command, &resolved))?;
    emit(&resolved, outputs)
}

fn build(command: &Command, r: &Resolved) -> Result<commands::Outputs> {
    match command {
        Command::Absorption { .. } => commands::absorption(r),
        Command::Txnf { .. } => commands::txnf(r),
        Command::Casestudy { .. } => commands::casestudy(r),
        Command::Sensitivity { .. } => commands::sensitivity(r),
        Command::Dominance { .. } => commands::dominance(r),
        Command::Sweep { .. } => commands::sweep(r),
    }
}

/// Multi-table commands write into the output directory; the others write
/// the single table to the output path.
fn emit(r: &Resolved, outputs: commands::Outputs) -> Result<Vec<PathBuf>> {
    let directory = matches!(r.command(), "casestudy" | "sensitivity");
    if directory {
        fs::create_dir_all(&r.out).with_context(|| format!("creating {}", r.out.display()))?;
    }
    let mut written = Vec::new();
    for (name, table) in outputs {
        let path = if directory {
            r.out.join(format!("{name}.{}", r.format.extension()))
        } else {
            r.out.clone()
        };
        let envelope = ReportEnvelope::new(&name, &r.config, table);
        written.extend(write_report(&path, r.format, &envelope)?);
    }
    Ok(written)
}
