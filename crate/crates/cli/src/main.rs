//! `snbs`: confidence intervals, simulation, coverage experiments, block-size
//! advice and block-statistic ECDFs from the command line.
//!
//! Exit codes: 0 success, 2 input error, 3 degenerate statistic.

mod advise;
mod ci;
mod ecdf;
mod error;
mod io;
mod mc;
mod model;
mod simulate;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "snbs", version, about = "Self-normalized block sampling for the mean of a time series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Confidence interval for the mean of a series read from a file
    Ci(ci::Args),
    /// Simulate one series and print it, one value per line
    Simulate(simulate::Args),
    /// Monte Carlo coverage of one-sided intervals over a grid of cells
    Mc(mc::Args),
    /// Block-dependence bounds and a block-size recommendation
    Advise(advise::Args),
    /// Knots of the block-statistic ECDF of one simulated series
    Ecdf(ecdf::Args),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ci(args) => ci::run(args),
        Command::Simulate(args) => simulate::run(args),
        Command::Mc(args) => mc::run(args),
        Command::Advise(args) => advise::run(args),
        Command::Ecdf(args) => ecdf::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
