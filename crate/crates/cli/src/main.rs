//! `hopf`: command-line front end for the exact Hopf algebra engine.
//!
//! Exit codes: 0 on success, 1 when a computed identity fails to verify,
//! 2 on bad input (parse, schema, cutoff or truncation errors).

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hopf_core::HopfError;

#[derive(Parser, Debug)]
#[command(
    name = "hopf",
    version,
    about = "Exact computations in graded connected commutative Hopf algebras"
)]
struct Cli {
    /// `ladder`, `trees:<max vertices>`, or `custom:<path>`. A bare `custom`
    /// reads the path from HOPF_SCHEMA_PATH.
    #[arg(long, global = true, default_value = "ladder")]
    schema: String,

    /// Degree cutoff. Defaults to the input file's `maxDegree`, then to the
    /// vertex bound for trees, then to 6.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    max_degree: Option<u32>,

    /// Order in eps (or in the formal grading variable) through which series
    /// are expanded.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(i32).range(1..))]
    eps_order: i32,

    /// Seed of the randomized property suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    output: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// An element given inline or as a JSON file.
#[derive(Args, Debug)]
pub struct ElementInput {
    /// Element in expression syntax, e.g. `t1^2*t2 + 3*t3` or `[[][]]`.
    #[arg(long, conflicts_with = "file")]
    pub expr: Option<String>,

    /// JSON element file, or `-` for stdin.
    #[arg(required_unless_present = "expr")]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coproduct of an element.
    Coproduct {
        #[command(flatten)]
        input: ElementInput,
        /// Drop the primitive part `h⊗1 + 1⊗h`.
        #[arg(long)]
        reduced: bool,
    },
    /// Antipode of an element.
    Antipode {
        #[command(flatten)]
        input: ElementInput,
        /// Use the left recursion instead of the right one.
        #[arg(long)]
        left: bool,
    },
    /// Convolution product of two functionals.
    Convolve { first: PathBuf, second: PathBuf },
    /// Convolution exponential of an infinitesimal character.
    Exp { file: PathBuf },
    /// Convolution logarithm of a character.
    Log { file: PathBuf },
    /// Birkhoff decomposition of a Laurent-valued character.
    Birkhoff { file: PathBuf },
    /// Residue, beta function and the d_n tower of a Laurent-valued character.
    Beta {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_order: usize,
        /// Treat the input as the pole part itself and skip the decomposition.
        #[arg(long)]
        counterterm: bool,
    },
    /// Builds the pole-part loop `ε + Σ d_n eps^-n` generated by a beta function.
    BuildLoop {
        file: PathBuf,
        /// Highest pole order kept. Defaults to the degree cutoff.
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Renormalization-group limit of a loop and its checks.
    RgCheck { file: PathBuf },
    /// Finite-time integrals of a beta function and their limits.
    Scattering {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_order: usize,
    },
    /// Runs the axiom checks and the seeded property suites.
    Verify,
    /// Lists the rooted trees with a given number of vertices.
    EnumerateTrees {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        vertices: u32,
    },
}

/// A command result. `passed` is false when an internal check failed.
pub struct Outcome {
    pub json: serde_json::Value,
    pub text: String,
    pub passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = config::Settings {
        schema: cli.schema,
        max_degree: cli.max_degree,
        eps_order: cli.eps_order,
        seed: cli.seed,
    };
    match commands::run(&settings, &cli.command) {
        Ok(out) => {
            match cli.output {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
                ),
                Format::Text => print!("{}", out.text),
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                HopfError::Verification(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
