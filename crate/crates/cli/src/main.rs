//! `refl` — reflection functors for bipartite diagrams of categories.
//!
//! Exit codes: 0 success, 1 invalid input, 2 violated property or
//! self-check.

mod commands;
mod demo;
mod schema;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable, malformed, or invalid input. Exit code 1.
    Input(String),
    /// A violated property or failed self-check. Exit code 2.
    Check(String),
}

impl From<refl_core::Error> for CliError {
    fn from(e: refl_core::Error) -> Self {
        match e {
            refl_core::Error::SelfCheck(_) => CliError::Check(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VariantArg {
    Cov,
    Contra,
}

impl VariantArg {
    pub fn variant(self) -> refl_core::groth::Variant {
        match self {
            VariantArg::Cov => refl_core::groth::Variant::Covariant,
            VariantArg::Contra => refl_core::groth::Variant::Contravariant,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OutFormat {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Direction {
    Plus,
    Minus,
}

#[derive(Parser)]
#[command(name = "refl", version, about = "Reflection functors for bipartite diagrams of categories")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the Grothendieck construction of a bipartite diagram.
    Groth {
        /// Diagram file (JSON).
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Cov)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        out: OutFormat,
        /// Write to a file instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply a reflection functor to a representation.
    Reflect {
        /// Representation file over the matching Grothendieck construction.
        #[arg(long)]
        rep: PathBuf,
        /// The underlying bipartite diagram file.
        #[arg(long)]
        diagram: PathBuf,
        /// plus: covariant shape in, contravariant out; minus: the reverse.
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Objectwise homology dimensions and Euler characteristics.
    Homology {
        /// Representation file (JSON, shape inline).
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the randomized verification suites.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Cases per suite.
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// "fp:<prime>" or "q".
        #[arg(long, default_value = "fp:5")]
        field: String,
        #[arg(long, hide = true)]
        corrupt_cone_sign: bool,
    },
    /// Write a bundled example and reproduce its computation.
    Demo {
        /// One of: a2, dstar, kronecker-example, delta1-example, cone.
        name: String,
        /// Directory for the fixture files.
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Groth { input, variant, out, output } => {
            commands::cmd_groth(&input, variant.variant(), out, output.as_deref())
        }
        Cmd::Reflect { rep, diagram, direction, output } => {
            commands::cmd_reflect(&rep, &diagram, direction, output.as_deref())
        }
        Cmd::Homology { input, output } => commands::cmd_homology(&input, output.as_deref()),
        Cmd::Verify { seed, cases, field, corrupt_cone_sign } => {
            verify::cmd_verify(seed, cases, &field, corrupt_cone_sign)
        }
        Cmd::Demo { name, dir } => demo::cmd_demo(&name, &dir),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Check(msg)) => {
            eprintln!("property violation: {msg}");
            ExitCode::from(2)
        }
    }
}
