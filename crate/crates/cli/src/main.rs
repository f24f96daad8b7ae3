//! `setflow` command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::CheckKind;

#[derive(Parser)]
#[command(name = "setflow", version, about = "Set differential equations on sampled support functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the scenario in a JSON config and write the trajectory.
    Integrate { config: PathBuf },
    /// Run the three relaxation trajectories toward [-1,1]^2 into a directory.
    Example { outdir: PathBuf },
    /// Run one diagnostic over the configured field.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        config: PathBuf,
    },
    /// Grid estimate and exact Hausdorff distance of two sets.
    Hausdorff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 256)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    let outcome = match &cli.command {
        Command::Integrate { config } => commands::run_integrate(config),
        Command::Example { outdir } => commands::run_example(outdir),
        Command::Check { kind, config } => commands::run_check(*kind, config),
        Command::Hausdorff { a, b, n } => commands::run_hausdorff(a, b, *n),
    };
    match outcome {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(error::CliError::Violation(report)) => {
            print!("{report}");
            eprintln!("{}", error::CliError::Violation("violation witnessed".into()));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit()
        }
    }
}
