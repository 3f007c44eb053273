use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zbconc::bounds::{Spacing, TGrid};
use zbconc::{BoundKind, Error};

mod commands;
mod report;

use report::Format;

#[derive(Parser)]
#[command(
    name = "zbconc",
    version,
    about = "Zero-bias concentration bounds, couplings and their validation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate tail bounds over a t-grid.
    Bound(commands::bound::BoundArgs),
    /// Moments and coupling constants of the permutation statistic.
    Moments(commands::moments::MomentsArgs),
    /// Draw permutations from a law.
    Sample(commands::sample::SampleArgs),
    /// Zero-bias density, samples, moment identities or sum couplings.
    Zerobias(commands::zerobias::ZerobiasArgs),
    /// Check exact or Monte Carlo tails against the bounds.
    Validate(commands::validate::ValidateArgs),
    /// Per-t winner among several bounds.
    Compare(commands::bound::CompareArgs),
}

#[derive(Args, Clone, Debug)]
pub struct OutputArgs {
    /// Output format; tabular commands default to csv.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
pub struct GridArgs {
    /// A single deviation threshold.
    #[arg(long, conflicts_with = "t_grid")]
    pub t: Option<f64>,
    /// Grid as min:max:count.
    #[arg(long = "t-grid", value_name = "MIN:MAX:COUNT")]
    pub t_grid: Option<String>,
    /// Log-spaced grid.
    #[arg(long)]
    pub log: bool,
}

impl GridArgs {
    pub fn resolve(&self) -> zbconc::Result<TGrid> {
        match (&self.t, &self.t_grid) {
            (Some(t), _) => TGrid::single(*t),
            (None, Some(text)) => {
                let g: TGrid = text.parse()?;
                let spacing = if self.log {
                    Spacing::Log
                } else {
                    Spacing::Linear
                };
                TGrid::new(g.min, g.max, g.count, spacing)
            }
            (None, None) => Err(Error::Domain("one of --t or --t-grid is required".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TailsMode {
    /// Enumerate when within the caps, else Monte Carlo.
    Auto,
    Exact,
    Mc,
}

pub fn parse_kind(s: &str) -> Result<BoundKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Bound(a) => commands::bound::run_bound(a),
        Command::Moments(a) => commands::moments::run(a),
        Command::Sample(a) => commands::sample::run(a),
        Command::Zerobias(a) => commands::zerobias::run(a),
        Command::Validate(a) => commands::validate::run(a),
        Command::Compare(a) => commands::bound::run_compare(a),
    };
    match outcome {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("zbconc: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
