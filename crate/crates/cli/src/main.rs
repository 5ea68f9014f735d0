//! `wmono`: generate W-class states, verify monogamy relations on them, sweep the
//! power-bound gap, and run the entanglement oracles.

mod config;
mod generate;
mod input;
mod oracle;
mod report;
mod sweep;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::ConfigArgs;

#[derive(Parser)]
#[command(
    name = "wmono",
    version,
    about = "Monogamy relations for generalized W-class states"
)]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a W-class state descriptor.
    Generate(generate::GenerateArgs),
    /// Run verification suites on a state and write a JSON or CSV report.
    Verify(verify::VerifyArgs),
    /// Tabulate f(beta, alpha) over a grid.
    Sweep(sweep::SweepArgs),
    /// Evaluate one pair measure with the convex-roof optimizer.
    Oracle(oracle::OracleArgs),
    /// Summarize one or more verify reports.
    Report(report::ReportArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match cli.config.resolve() {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    let outcome = match cli.command {
        Command::Generate(args) => generate::run(args, &config).map(|()| ExitCode::SUCCESS),
        Command::Verify(args) => verify::run(args, &config),
        Command::Sweep(args) => sweep::run(args, &config).map(|()| ExitCode::SUCCESS),
        Command::Oracle(args) => oracle::run(args, &config).map(|()| ExitCode::SUCCESS),
        Command::Report(args) => report::run(args).map(|()| ExitCode::SUCCESS),
    };
    outcome.unwrap_or_else(input_error)
}

fn input_error(e: anyhow::Error) -> ExitCode {
    eprintln!("error: {e:#}");
    ExitCode::from(2)
}
