//! `tightsets`: search, verify and decompose Cameron-Liebler line classes.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid parameters or
//! input, 3 search finished without a solution.

mod affine;
mod info;
mod load;
mod search;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "tightsets", version, about = "Cameron-Liebler line classes as tight sets of Q+(5,q)")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize the quadric and orbit structure for one q.
    Info(info::InfoArgs),
    /// Search orbit unions for tight sets and write certificates.
    Search(search::SearchArgs),
    /// Re-check a certificate.
    Verify(verify::VerifyArgs),
    /// Derive the point classes and affine two-intersection sets of a certificate.
    DeriveAffine(affine::AffineArgs),
}

/// How a command finished, when it did not hit an input error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Failed,
    NotFound,
}

impl From<Outcome> for ExitCode {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::Ok => ExitCode::SUCCESS,
            Outcome::Failed => ExitCode::from(1),
            Outcome::NotFound => ExitCode::from(3),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let res = match &cli.command {
        Command::Info(a) => info::run(a),
        Command::Search(a) => search::run(a),
        Command::Verify(a) => verify::run(a),
        Command::DeriveAffine(a) => affine::run(a),
    };
    match res {
        Ok(o) => o.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
