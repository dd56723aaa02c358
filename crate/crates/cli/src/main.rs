//! `manin` — exact-rational cone geometry and the numerical invariants of
//! Manin's conjecture from the command line.
//!
//! Exit codes: 0 success / all quantities pass, 1 verification failures
//! present, 2 input or schema errors. Output is deterministic: identical
//! inputs produce byte-identical output in both text and structured mode.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{casestudy, cone, delpezzo, fujita, invariants};
use crate::output::Format;

#[derive(Parser)]
#[command(
    name = "manin",
    about = "Exact rational polyhedral cones, Fujita invariants, del Pezzo lattices and \
             case-study verification",
    version
)]
pub struct Cli {
    /// Output format: plain text or structured JSON (rationals as "p/q").
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Dataset file path or bundled dataset name.
    #[arg(long, global = true)]
    dataset: Option<String>,

    /// Bound override for enumerations and group-closure checks.
    #[arg(long, global = true)]
    bound: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cone construction, duality, membership and faces.
    #[command(subcommand)]
    Cone(cone::ConeCmd),
    /// Fujita invariant a(X,L), b-invariants and balanced comparisons.
    #[command(subcommand)]
    Invariants(invariants::InvariantsCmd),
    /// Explicit bigness criteria, volume bounds and cover bounds.
    #[command(subcommand)]
    Fujita(fujita::FujitaCmd),
    /// Del Pezzo lattice enumerations and contractions.
    #[command(subcommand)]
    Delpezzo(delpezzo::DelpezzoCmd),
    /// Load, verify and cross-check bundled or external datasets.
    #[command(subcommand)]
    Casestudy(casestudy::CasestudyCmd),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context {
        format: cli.format,
        dataset: cli.dataset,
        bound: cli.bound,
    };
    let outcome = match cli.command {
        Command::Cone(cmd) => cone::run(&ctx, cmd),
        Command::Invariants(cmd) => invariants::run(&ctx, cmd),
        Command::Fujita(cmd) => fujita::run(&ctx, cmd),
        Command::Delpezzo(cmd) => delpezzo::run(&ctx, cmd),
        Command::Casestudy(cmd) => casestudy::run(&ctx, cmd),
    };
    match outcome {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
