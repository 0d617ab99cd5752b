//! `simplegrp`: build generator-pair datasets, train simplicity classifiers,
//! and run the finite verification sweeps.

mod args;
mod dataset_cmd;
mod report;
mod train_cmd;
mod verify_cmd;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Ok,
    /// A verification found counterexamples or mismatches.
    Violations,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(k) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("error: cannot start {k} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Dataset(cmd) => dataset_cmd::run(cmd),
        Command::Train(a) => train_cmd::run(a, false),
        Command::Crossval(a) => train_cmd::run(a, true),
        Command::Verify(cmd) => verify_cmd::run(cmd),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violations) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
