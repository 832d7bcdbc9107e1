//! `zerosum`: exact weighted zero-sum computations from the command line.
//!
//! Exit codes: 0 = result produced / all assertions hold, 2 = a mathematical
//! violation certificate was emitted, 1 = usage or resource error.

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod parse;
pub mod recheck;
pub mod report;

pub const ENV_PREFIX: &str = "ZEROSUM_";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Auto,
    Dp,
    Naive,
}

#[derive(Debug, Parser)]
#[command(name = "zerosum", version, about = "Exact weighted zero-sum subsequence computations over finite abelian groups", disable_help_subcommand = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table, env = "ZEROSUM_FORMAT")]
    pub format: Format,

    /// Seed for randomized scans
    #[arg(long, global = true, env = "ZEROSUM_SEED")]
    pub seed: Option<u64>,

    /// Maximum sequence length for the naive counting engine
    #[arg(long, global = true, env = "ZEROSUM_MAX_NAIVE")]
    pub max_naive: Option<usize>,

    /// Maximum number of DP ledger states
    #[arg(long, global = true, env = "ZEROSUM_STATE_BUDGET")]
    pub state_budget: Option<usize>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true, env = "ZEROSUM_THREADS")]
    pub threads: Option<usize>,

    /// Independently re-verify every witness in the emitted report
    #[arg(long, global = true, env = "ZEROSUM_RECHECK")]
    pub recheck: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute D_A(G) by exhaustive search
    Davenport {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "full")]
        weights: String,
    },
    /// Count N_{A,g}(S) exactly
    Count {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "full")]
        weights: String,
        #[arg(long)]
        seq: String,
        #[arg(long, default_value = "0")]
        target: String,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
        /// Exclude the empty subsequence from the count at g = 0
        #[arg(long)]
        exclude_empty: bool,
    },
    /// Classify S against the completeness bound at g = 0
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "full")]
        weights: String,
        #[arg(long)]
        seq: String,
    },
    /// Structural decomposition over a maximal zero-sum-free basis
    Decompose {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "full")]
        weights: String,
        #[arg(long)]
        seq: String,
    },
    /// Construct the 2^|W| zero-sum family
    Family {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "full")]
        weights: String,
        #[arg(long)]
        seq: String,
    },
    /// Verify a proved identity or theorem
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Scan for counterexamples to the completeness conjecture
    Scan {
        #[arg(long)]
        group: String,
        #[arg(long)]
        weights: String,
        #[arg(long)]
        maxlen: usize,
        /// Sample this many random sequences instead of exhausting
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// D_A(G) = r + 1 for full weights
    Lemma {
        #[arg(long)]
        group: Option<String>,
        /// Sweep every abelian group up to this order
        #[arg(long)]
        max_order: Option<u64>,
    },
    /// D_{bA}(G) = D_A(gcd(b,n)G)
    Scaling {
        #[arg(long)]
        group: String,
        #[arg(long)]
        weights: String,
        #[arg(long)]
        b: u64,
    },
    /// D_A(G) = D_{A'}(dG) when A ∪ {0} = ⟨d⟩ is proper
    Subgroup {
        #[arg(long)]
        group: String,
        #[arg(long)]
        weights: String,
    },
    /// N_{A,0}(S) ≥ 2^{|S|−D_A+1} exhaustively, plus the family construction
    Bound {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "full")]
        weights: String,
        #[arg(long)]
        maxlen: usize,
    },
    /// Structure of extremal sequences (odd exponent)
    Extremal {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "full")]
        weights: String,
        #[arg(long)]
        maxlen: usize,
        /// Run observationally on even exponent instead of rejecting
        #[arg(long)]
        allow_even: bool,
    },
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok { 0 } else { 1 };
        }
    };
    if let Some(threads) = cli.threads {
        // Best effort: the global pool may already exist in-process.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let started = std::time::Instant::now();
    let outcome = match commands::execute(&cli) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 1;
        }
    };
    print!(
        "{}",
        report::emit(&outcome.report, cli.format, started.elapsed())
    );
    if cli.recheck {
        let caps = commands::caps_from(&cli);
        if let Err(msg) = recheck::verify(&outcome.report, &caps) {
            eprintln!("recheck failed: {msg}");
            return 1;
        }
        eprintln!("recheck passed");
    }
    outcome.exit
}
