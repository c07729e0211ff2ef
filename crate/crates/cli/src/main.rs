//! `conelab` — classify linear maps between matrix algebras and test
//! bipartite operators for cone membership, from JSON documents on disk.
//!
//! Exit codes: 0 — run completed (verdicts may include UNKNOWN);
//! 2 — parse or validation error (also used by the argument parser);
//! 3 — internal numeric failure; 4 — a `--verify` re-check failed.

mod doc;
mod emit;
mod report;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "conelab",
    version,
    about = "Positivity structure of maps between matrix algebras",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full positivity classification of a map document.
    Classify(ClassifyArgs),
    /// Test an operator document for membership in one cone.
    Cone(ConeArgs),
    /// Generate a catalog object and write it as an input document.
    Gallery(GalleryArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Membership tolerance, relative to the operator scale.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Random starts per product-vector search.
    #[arg(long, default_value_t = 200)]
    starts: usize,
    /// Master seed for every randomized search phase.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Soft wall-clock budget for the heavy solvers, in milliseconds.
    #[arg(long)]
    budget_ms: Option<u64>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to this path (atomically) instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Re-validate every certificate against the raw input document and fail
    /// with exit code 4 on any violation.
    #[arg(long)]
    verify: bool,
    /// Reject unknown fields in the input document instead of warning.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Path to a JSON document with kind "map".
    input: PathBuf,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ConeArgs {
    /// Path to a JSON document with kind "operator".
    input: PathBuf,
    /// Cone to test: cp (PSD), ccp (PSD partial transpose), d (both, the
    /// PPT cone), i (block positive), p (separable).
    #[arg(long, value_enum)]
    cone: ConeName,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct GalleryArgs {
    /// Catalog name, e.g. choi3, werner, random_cp.
    name: String,
    /// Entry parameter as key=value; repeatable (e.g. --param n=3).
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Seed for the random_* entries.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the document to this path (atomically) instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConeName {
    Cp,
    Ccp,
    D,
    I,
    P,
}

/// A failure with its contractual exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn numeric(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        Self {
            code: 4,
            message: message.into(),
        }
    }

    fn from_core(e: &conelab_core::Error) -> Self {
        use conelab_core::Error::*;
        match e {
            NotSquare { .. }
            | SizeMismatch { .. }
            | NonHermitianInput { .. }
            | NonFiniteEntry { .. }
            | InvalidK { .. }
            | UnknownName(_)
            | BadParameter { .. } => Self::usage(e.to_string()),
            _ => Self::numeric(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Classify(args) => run::classify(&args),
        Command::Cone(args) => run::cone(&args),
        Command::Gallery(args) => run::gallery(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("conelab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
