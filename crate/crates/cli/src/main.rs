//! `smoothdisc`: reproducible smooth-discrepancy experiments with CSV, SVG and
//! JSON metadata output.
//!
//! Exit status: 0 when every check holds, 1 when a check fails or a
//! computation errors, 2 on usage errors.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Options, RunConfig, Usage};

#[derive(Parser)]
#[command(name = "smoothdisc", version, about = "Smooth discrepancy of Kronecker sequences and lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sup of the smooth discrepancy over a dyadic box grid, against phi(L(N))
    Discrepancy(Options),
    /// Randomized direct-versus-dual agreement suite
    PoissonCheck(Options),
    /// Lower-bound witnesses from good dual approximations
    Witness(Options),
    /// Running minima of n |n a| |n b|
    Littlewood(Options),
    /// Bohr-set counts and uncertainty-set emptiness
    Bohr(Options),
    /// Classical star discrepancy of n alpha mod 1
    ScanClassical(Options),
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let (name, opts, default_schedule, f): (&str, Options, &str, fn(&RunConfig) -> anyhow::Result<bool>) = match cli.command {
        Command::Discrepancy(o) => ("discrepancy", o, "100:10:5", commands::discrepancy),
        Command::PoissonCheck(o) => ("poisson-check", o, "100:100:2", commands::poisson_check),
        Command::Witness(o) => ("witness", o, "1:1:1", commands::witness),
        Command::Littlewood(o) => ("littlewood", o, "1:1:1", commands::littlewood),
        Command::Bohr(o) => ("bohr", o, "100:10:3", commands::bohr),
        Command::ScanClassical(o) => ("scan-classical", o, "100:10:5", commands::scan_classical),
    };
    let cfg = RunConfig::resolve(name, opts.load()?, default_schedule)?;
    f(&cfg)
}

fn is_usage(e: &anyhow::Error) -> bool {
    use smoothdisc::Error::*;
    if e.downcast_ref::<Usage>().is_some() {
        return true;
    }
    matches!(
        e.downcast_ref::<smoothdisc::Error>(),
        Some(InvalidWeight(_) | InvalidInput(_) | Parse(_) | NotIrrational(_) | Domain(_) | NotTotallyReal(_) | EnvelopeExceeded(_))
    )
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
