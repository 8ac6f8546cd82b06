//! `fiedler-lab` command-line interface.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on computation errors.

mod commands;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "fiedler-lab",
    version,
    about = "Fiedler vectors, heat flow and the Fiedler rose"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve a Fiedler rose and print its B-matrix (or a full report)
    Rose(RoseArgs),
    /// Check whether the Fiedler extremes sit on a diameter pair
    Check(CheckArgs),
    /// Scan a grid of rose shapes
    Scan(ScanArgs),
    /// Search random labeled trees for violations
    Search(SearchArgs),
    /// Solve the discrete heat equation
    Heat(HeatArgs),
    /// Print the full Laplacian spectrum
    Spectrum(SpectrumArgs),
    /// Export a graph as DOT (sign-colored) or as an edge list
    Export(ExportArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    BMatrix,
    Json,
    Csv,
    Dot,
    Text,
}

/// Where the graph comes from. Exactly one source must be given.
#[derive(Args, Debug, Clone, Default)]
pub struct GraphSource {
    /// Edge-list file
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Rose given as `p,s`
    #[arg(long, value_parser = parse_pair)]
    pub rose: Option<(usize, usize)>,
    /// Rose petal count (with --stem)
    #[arg(short = 'p', long)]
    pub petals: Option<usize>,
    /// Rose stem length (with --petals)
    #[arg(short = 's', long)]
    pub stem: Option<usize>,
    /// Random labeled tree size (with --seed)
    #[arg(long)]
    pub n: Option<usize>,
    /// Seed for random trees and random initial data
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct RoseArgs {
    #[arg(short = 'p', long)]
    pub petals: usize,
    #[arg(short = 's', long)]
    pub stem: usize,
    #[arg(long, value_enum, default_value = "b-matrix")]
    pub format: Format,
    /// Residual tolerance of the eigensolver
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Petal counts, e.g. `1..12` (inclusive) or `7`
    #[arg(short = 'p', long, value_parser = parse_range, default_value = "1..12")]
    pub petals: RangeInclusive<usize>,
    /// Stem lengths, e.g. `5` or `2..6`
    #[arg(short = 's', long, value_parser = parse_range, default_value = "5")]
    pub stem: RangeInclusive<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub instances: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct HeatArgs {
    #[command(flatten)]
    pub source: GraphSource,
    /// Final time
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// RK4 step; defaults to min(1e-3, 0.1 / max_degree)
    #[arg(long)]
    pub dt: Option<f64>,
    /// Initial state: `delta:VERTEX`, `uniform` (seeded random in [0, 1)) or `file:PATH`
    #[arg(long, default_value = "delta:0")]
    pub u0: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, value_enum, default_value = "dot")]
    pub format: Format,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `p,s`, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// `a..b` and `a..=b` are both inclusive; a bare number is a single value.
fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    let range = match s.split_once("..") {
        Some((a, b)) => parse(a)?..=parse(b.trim_start_matches('='))?,
        None => {
            let v = parse(s)?;
            v..=v
        }
    };
    if range.is_empty() {
        return Err(format!("empty range `{s}`"));
    }
    Ok(range)
}

/// Failure classes mapped to exit codes.
pub enum Failure {
    Usage(String),
    Compute(String),
}

impl From<fiedler_lab::Error> for Failure {
    fn from(e: fiedler_lab::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
