mod commands;
mod error;
mod report;
mod suite;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use qsaa_core::simple_mods::SimpleType;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    #[value(name = "qsaa")]
    Qsaa,
    #[value(name = "A")]
    Extended,
    #[value(name = "B")]
    Sub,
}

/// Exact computations with the quantum spatial ageing algebra at a root of unity.
#[derive(Debug, Parser)]
#[command(name = "qsaa", version)]
pub struct Cli {
    /// Output format; CSV prints the check table, or matrix entries for module output.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Largest module dimension for which the action closure is computed.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_closure_dim: usize,
    /// Largest group size enumerated by brute-force checks.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub max_enumeration: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// PI degree from the skew normal form of an exponent matrix.
    Pideg {
        #[arg(long, value_enum, default_value = "qsaa")]
        algebra: Algebra,
        /// Root order, used as the modulus for a custom matrix.
        #[arg(long)]
        l: u32,
        /// Skew-symmetric integer matrix as a JSON array of rows, inline or a file path.
        #[arg(long)]
        matrix: Option<String>,
        /// Also count the image subgroup by enumeration.
        #[arg(long)]
        bruteforce: bool,
    },
    /// Emit one of the simple modules as module JSON.
    Build {
        #[arg(value_parser = parse_kind)]
        kind: SimpleType,
        #[arg(long)]
        l: u32,
        /// Comma-separated parameters in the cyclotomic literal syntax.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Check the defining relations of a module and report its structure.
    Verify {
        /// Module JSON file, or `-` for standard input.
        #[arg(long)]
        module: String,
        /// Treat a non-simple module as a failure.
        #[arg(long)]
        expect_simple: bool,
    },
    /// Decide whether two parameter sets give isomorphic modules.
    Iso {
        #[arg(value_parser = parse_kind)]
        kind: SimpleType,
        #[arg(long)]
        l: u32,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        /// Cross-check against the dimension of the Hom space.
        #[arg(long)]
        oracle: bool,
    },
    /// Identify a torsion-free simple module with a standard one.
    Classify {
        #[arg(long)]
        module: String,
        /// Extra eigenvalue candidates, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        hints: Option<String>,
    },
    /// Build a finite Verma quotient and report its structure.
    Verma {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        lambda1: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        lambda2: String,
        /// Also spin up every basis vector and match it against the chain.
        #[arg(long)]
        census: bool,
    },
    /// Modules over the subalgebra and the extension.
    Smash {
        #[command(subcommand)]
        command: SmashCommand,
    },
    /// Normal form of an algebra element.
    NormalForm {
        #[arg(long, value_enum, default_value = "qsaa")]
        algebra: Algebra,
        #[arg(long)]
        l: u32,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Run the full battery of checks for one root order.
    Suite {
        #[arg(long)]
        l: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum SmashCommand {
    /// Emit the module over the subalgebra with the given parameters.
    BuildN1 {
        #[arg(long)]
        l: u32,
        /// lambda1,lambda2,lambda3,xi,alpha
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    /// Extend a module over the subalgebra to the extension.
    Lift {
        #[arg(long)]
        module: String,
    },
    /// Read the parameters back off a module over the subalgebra.
    Eigen {
        #[arg(long)]
        module: String,
        #[arg(long, allow_hyphen_values = true)]
        hints: Option<String>,
    },
    /// PI degree of the extension and of the subalgebra.
    Pideg {
        #[arg(long)]
        l: u32,
    },
}

fn parse_kind(s: &str) -> Result<SimpleType, String> {
    s.parse().map_err(|e: qsaa_core::Error| e.to_string())
}

/// What a command produced.
pub enum Output {
    Report(report::Report),
    Module(serde_json::Value),
}

fn emit(out: &Output, format: Format, started: Instant) -> Result<i32, CliError> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match (out, format) {
        (Output::Report(r), Format::Json) => {
            serde_json::to_writer_pretty(&mut lock, &r.to_json(started.elapsed()))?;
            writeln!(lock)?;
            Ok(r.exit_code())
        }
        (Output::Report(r), Format::Csv) => {
            r.write_csv(&mut lock)?;
            Ok(r.exit_code())
        }
        (Output::Module(m), Format::Json) => {
            serde_json::to_writer_pretty(&mut lock, m)?;
            writeln!(lock)?;
            Ok(0)
        }
        (Output::Module(m), Format::Csv) => {
            report::write_module_csv(m, &mut lock)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let started = Instant::now();
    let code = match commands::run(&cli, &echo).and_then(|out| emit(&out, cli.format, started)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
