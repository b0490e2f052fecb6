//! `fairbin` command line: `bin` produces one binning report, `bench`
//! sweeps synthetic settings into a grid CSV.
//!
//! Exit codes: 0 = feasible, 2 = infeasible (an expected outcome,
//! distinguishable for scripting), 1 = any error. `FAIRBIN_THREADS` bounds
//! the worker pool; results do not depend on it.

mod args;
mod run_bench;
mod run_bin;

use args::{Cli, Command};
use clap::Parser;
use fairbin_core::exec::{threads_from_env, with_thread_bound};
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Feasible,
    Infeasible,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/usage text
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let outcome = with_thread_bound(threads_from_env(), || match &cli.command {
        Command::Bin(args) => run_bin::run(args).map(Some),
        Command::Bench(args) => run_bench::run(args).map(|()| None),
    });
    match outcome {
        Ok(Some(ExitStatus::Infeasible)) => ExitCode::from(2),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
