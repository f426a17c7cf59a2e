mod cli;
mod commands;
mod config;

use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use cli::{Cli, Command};
use commands::Status;
use config::resolve;

fn run(cli: Cli) -> Result<Status> {
    if let Some(threads) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring worker threads")?;
    }
    let g = &cli.global;
    let out = &g.out_dir;
    match &cli.command {
        Command::Generate(args) => commands::generate(&resolve(g, args)?, out),
        Command::Analyze(args) => commands::analyze(&resolve(g, args)?, out),
        Command::Theory(args) => commands::theory(&resolve(g, args)?, out),
        Command::Sweep(args) => commands::sweep(&resolve(g, args)?, out),
        Command::Validate(args) => commands::validate(&resolve(g, args)?, out),
        Command::Classify(args) => commands::classify(&resolve(g, args)?, out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
