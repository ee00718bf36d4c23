use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "smashprod", version, about = "Lie algebra decompositions, truncated smash products and weight checks")]
pub struct Cli {
    /// Truncation degree for Hopf algebra models.
    #[arg(long, global = true, default_value_t = 4)]
    pub truncation: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Radicals, semidirect chain and smash factorization of a solvable Lie algebra.
    Decompose {
        file: PathBuf,
        /// E, N, or ideal:<name>,<name>,...
        #[arg(long, default_value = "N")]
        nprime: String,
        /// Dimension of a symbolic reductive tail appended to the chain.
        #[arg(long, default_value_t = 0)]
        tail_dim: usize,
    },
    /// Exhaustive Hopf axiom check of a truncated model.
    HopfVerify {
        /// series, euler, weyl, cyclic, trivial, or lie:<file>[:E|N]
        target: String,
    },
    /// Structure tables of a truncated model as CSV.
    SmashTable {
        target: String,
        #[arg(long, value_enum, default_value_t = Table::Mult)]
        table: Table,
    },
    /// Sampled majorization of two weights in both directions.
    WeightCheck {
        w1: String,
        w2: String,
        /// Comma-separated radius schedule.
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
        #[arg(long)]
        count: Option<usize>,
        /// Exit with status 3 unless the relation is as given.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Word lengths by breadth-first search, and distortion fits.
    WordWeight {
        /// heis3z, bs12, zk:K or semidirect:a,b;c,d
        group: String,
        #[arg(long, default_value_t = 10)]
        radius: u32,
        /// Elements whose word length to report.
        #[arg(long = "element")]
        elements: Vec<String>,
        /// Fit the growth of len(h^m).
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Exact checks of the series norms.
    Norm {
        #[arg(long, default_value = "1")]
        r: String,
        #[arg(long, default_value_t = 0)]
        s: u32,
        /// Highest monomial degree in the pair sweep.
        #[arg(long, default_value_t = 8)]
        degree: usize,
        #[arg(long, default_value_t = 100)]
        random: usize,
        /// Also check the product bound on this many tuples per length.
        #[arg(long)]
        product_bound: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_p: usize,
        /// Comma-separated coefficients a_0,a_1,... whose norm to print.
        #[arg(long)]
        series: Option<String>,
    },
    /// Runs the invariant suites of every module.
    Selfcheck {
        /// Additional Lie algebra files to include.
        #[arg(long = "lie")]
        lie: Vec<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Mult,
    Comult,
    Antipode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Holds,
    Violated,
    Equivalent,
    NotEquivalent,
}
