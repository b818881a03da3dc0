/// `println!` that exits quietly when stdout is a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
        }
    }};
}

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Finite-model lab for filter-indexed products of topologies, filters and
/// uniformities.
#[derive(Debug, Parser)]
#[command(name = "fprod", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the F-topology, F-filter or F-uniformity of an instance file.
    Construct {
        #[arg(long)]
        instance: String,
        #[arg(long, value_enum)]
        what: Construction,
        /// Write the JSON result here instead of standard output.
        #[arg(long)]
        out: Option<String>,
    },
    /// Evaluate a predicate on the F-topology of an instance file.
    Check {
        #[arg(long)]
        instance: String,
        #[arg(long, value_enum)]
        prop: CheckProp,
        /// Product subset for `dense`, as a JSON array of points.
        #[arg(long)]
        set: Option<String>,
        /// Number of disjoint dense sets for `resolvable`.
        #[arg(long)]
        n: Option<usize>,
        /// Exit 1 when the verdict differs from this value.
        #[arg(long)]
        expect: Option<bool>,
        #[arg(long)]
        json: bool,
    },
    /// Check a proposition over a grid of instances.
    Verify {
        #[arg(long)]
        prop: String,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Search a catalogued claim for a counterexample.
    Search {
        #[arg(long)]
        claim: String,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Print every filter or topology on a small set, in canonical order.
    Enumerate {
        #[arg(long, value_enum)]
        what: Enumerable,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        json: bool,
    },
    /// List proposition ids, search claims and out-of-scope entries.
    List,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Construction {
    FTopology,
    FFilter,
    FUniformity,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CheckProp {
    Hausdorff,
    T1,
    Dense,
    Resolvable,
    ContinuousProjections,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Enumerable {
    Filters,
    Topologies,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FilterChoice {
    All,
    Proper,
    Trivial,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Index set sizes to sweep.
    #[arg(long = "index-size", value_delimiter = ',')]
    pub index_sizes: Vec<usize>,
    /// Points per factor.
    #[arg(long)]
    pub factor_size: Option<usize>,
    /// Factor presets: sierpinski, discrete2, discrete3, indiscrete2.
    #[arg(long, value_delimiter = ',')]
    pub factors: Vec<String>,
    /// Which filters on the index set to sweep.
    #[arg(long, value_enum)]
    pub filters: Option<FilterChoice>,
    /// Use only the principal filter of these index labels (1-based).
    #[arg(long, value_delimiter = ',', conflicts_with = "filters")]
    pub index_filter: Vec<usize>,
    /// Stop after this many instances and report the run as incomplete.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub max_seconds: Option<f64>,
    /// Evaluate every part on every instance, hypothesis or not.
    #[arg(long)]
    pub ignore_hypotheses: bool,
    #[arg(long)]
    pub json: bool,
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_COUNTEREXAMPLE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::from(EXIT_OK);
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error: code=usage message={first}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: code={} message={}", e.code(), e.message());
            ExitCode::from(EXIT_INPUT)
        }
    }
}
