//! `locolor`: verify, solve, construct, bound, reduce and generate corpora.
//!
//! Vertices are 0-based and colors 1-based in every file and report.
//! Exit codes: 0 success or feasible, 1 infeasible or a violation,
//! 2 usage or input error, 3 node budget exhausted.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use locolor::solve::{Kind, DEFAULT_BUDGET};

#[derive(Debug, Parser)]
#[command(name = "locolor", version, about = "Locating and neighbor-locating graph colorings")]
pub struct Cli {
    /// Print a JSON report on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Search node budget.
    #[arg(long, global = true, env = "LOCOLOR_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(alias = "chi")]
    Proper,
    #[value(alias = "chi-l")]
    Locating,
    #[value(alias = "chi-nl")]
    Nl,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Proper => Kind::Proper,
            KindArg::Locating => Kind::Locating,
            KindArg::Nl => Kind::NeighborLocating,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InvariantArg {
    Chi,
    ChiL,
    ChiNl,
}

impl From<InvariantArg> for Kind {
    fn from(k: InvariantArg) -> Kind {
        match k {
            InvariantArg::Chi => Kind::Proper,
            InvariantArg::ChiL => Kind::Locating,
            InvariantArg::ChiNl => Kind::NeighborLocating,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Gpqr,
    GapPair,
    NlFamily,
    Path,
    Cycle,
    Complete,
    Star,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    /// DIMACS `.col` with label comments.
    Col,
    /// Plain `n m` edge list.
    Edges,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a coloring against a graph.
    Verify {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        /// Include per-vertex signatures in the JSON report.
        #[arg(long)]
        signatures: bool,
        /// Treat unreachable classes as infinitely far (locating only).
        #[arg(long)]
        allow_disconnected: bool,
    },
    /// Compute an invariant exactly, or decide feasibility for `--k` colors.
    Solve {
        #[arg(long, value_enum)]
        invariant: InvariantArg,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Write the witness coloring here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Build a graph family and write graph, coloring and manifest files.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated integers, e.g. `3,4,5` for gpqr.
        #[arg(long, value_delimiter = ',')]
        params: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Col)]
        format: FormatArg,
    },
    /// Evaluate one of the closed-form bounds.
    Bounds {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        delta: Option<u64>,
        /// Average degree as an integer, fraction (`7/2`) or decimal (`3.5`).
        #[arg(long)]
        avgdeg: Option<String>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long)]
        i: Option<u64>,
        #[arg(long)]
        c: Option<u64>,
    },
    /// Build the gadget graph G* of a connected graph.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        /// Lift a proper 3-coloring of the input graph.
        #[arg(long, conflicts_with = "extract")]
        lift: Option<PathBuf>,
        /// Extract a proper 3-coloring from a coloring of G*.
        #[arg(long)]
        extract: Option<PathBuf>,
        /// Coloring type expected by `--extract`.
        #[arg(long, value_enum, default_value_t = KindArg::Nl)]
        mode: KindArg,
        /// Check the sparsity and 4-colorability claims.
        #[arg(long)]
        report: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the seeded regression corpus.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = locolor::corpus::DEFAULT_SIZE)]
        size: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

/// How a successful run ended; maps onto the exit-code contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Negative,
    OutOfBudget,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Negative => 1,
            Status::OutOfBudget => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
