//! `quartic-lab`: evaluate, verify and cross-check the quartic integral
//! family from the command line.
//!
//! Exit codes: 0 success, 1 verification or tolerance failure, 2 usage or
//! domain error.

// `!(x > y)` keeps NaN on the rejecting side.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod crosscheck;
mod error;
mod eval;
mod json;
mod ode2rec;
mod poly;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "quartic-lab", version, about = "Quartic integral evaluator and certificate checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one integral by quadrature, series or closed form
    Eval(eval::EvalArgs),
    /// Check a telescoping certificate exactly
    Verify(verify::VerifyArgs),
    /// Exact coefficients of P_m(a)
    Poly(poly::PolyArgs),
    /// Translate a differential operator into a coefficient recurrence
    Ode2rec(ode2rec::Ode2RecArgs),
    /// Compare quadrature, series and closed form on a grid
    Crosscheck(crosscheck::CrosscheckArgs),
}

fn seed() -> Result<u64, CliError> {
    quartic_lab::seed_from_env().map_err(CliError::usage)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Eval(args) => {
            json::emit(&json::render(&eval::run(&args)?));
            Ok(0)
        }
        Command::Verify(args) => {
            let (report, ok) = verify::run(&args, seed()?)?;
            json::emit(&json::render(&report));
            Ok(if ok { 0 } else { error::EXIT_FAILURE })
        }
        Command::Poly(args) => {
            json::emit(&json::render(&poly::run(&args)));
            Ok(0)
        }
        Command::Ode2rec(args) => {
            json::emit(&json::render(&ode2rec::run(&args)?));
            Ok(0)
        }
        Command::Crosscheck(args) => {
            let (text, failing) = crosscheck::run(&args)?;
            json::emit(&text);
            match failing {
                None => Ok(0),
                Some(row) => {
                    eprintln!("quartic-lab: tolerance exceeded; worst row {}", row.describe());
                    Ok(error::EXIT_FAILURE)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("quartic-lab: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
