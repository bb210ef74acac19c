//! `anyonic`: command-line front end.
//!
//! Exit status: 0 on success, 1 for usage and input errors, 2 for numeric
//! or resource failures (crossing budget, size limits, failed checks).

mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "anyonic", version, about = "Anyonic computation workbench")]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the parallel scans (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

/// A braid word from a file ("n=<strands>" then letters) or inline.
#[derive(Args, Debug, Clone)]
pub struct WordInput {
    /// Braid word file; "-" reads standard input.
    #[arg(value_name = "WORD_FILE", conflicts_with = "letters")]
    pub file: Option<PathBuf>,

    /// Inline letters, e.g. "1 -2 3" (needs --strands).
    #[arg(long, allow_hyphen_values = true, requires = "strands")]
    pub letters: Option<String>,

    #[arg(long)]
    pub strands: Option<usize>,
}

/// Link input: the plat closure of a word, or a diagram JSON file.
#[derive(Args, Debug, Clone)]
pub struct LinkInput {
    #[command(flatten)]
    pub word: WordInput,

    /// Read a diagram JSON file instead of a word.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["file", "letters"])]
    pub diagram: Option<PathBuf>,

    /// Close as plat(b·γ·b⁻¹) with γ around this pair instead of plat(b).
    #[arg(long, value_name = "PAIR")]
    pub measure: Option<usize>,

    /// Write the diagram as JSON to this file.
    #[arg(long, value_name = "FILE")]
    pub export: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of fusion paths of n type-1 anyons.
    Dims {
        #[arg(long)]
        anyons: usize,
        /// Total charge 0..=3.
        #[arg(long, default_value_t = 0)]
        sector: u8,
    },
    /// Kauffman bracket of a link by the state sum.
    Bracket(LinkInput),
    /// Jones polynomial at t = e^{2πi/5}, with c, w and m.
    Jones(LinkInput),
    /// Initialize, braid, and measure a pair.
    Simulate {
        #[command(flatten)]
        word: WordInput,
        #[arg(long, default_value_t = 1)]
        pair: usize,
    },
    /// Compare the simulated pair-1 probability with the Jones formula.
    Verify {
        /// Braid word files to check.
        #[arg(value_name = "WORD_FILE", conflicts_with = "random")]
        files: Vec<PathBuf>,
        /// Check this many seeded random words instead.
        #[arg(long, requires_all = ["strands", "len", "seed"])]
        random: Option<usize>,
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long)]
        len: Option<usize>,
        /// Seed for the ChaCha8 generator.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Compile a gate target (JSON) into a braid word.
    Compile {
        #[arg(value_name = "TARGET_JSON")]
        target: PathBuf,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, default_value_t = anyonic::compiler::DEFAULT_LEAKAGE_TOL)]
        leakage_tol: f64,
        /// Recursive refinement levels (one-batch targets only).
        #[arg(long, default_value_t = 0)]
        sk_levels: usize,
        /// Write the word in braid-word text format here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Write {distance, leakage_bound, depth_searched} here.
        #[arg(long, value_name = "FILE")]
        sidecar: Option<PathBuf>,
    },
    /// Check the k-code condition for a subspace (JSON).
    Kcode {
        #[arg(value_name = "SUBSPACE_JSON")]
        subspace: PathBuf,
        /// Check this k; without it, report the largest k.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = anyonic::kcode::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = BasisArg::MatrixUnits)]
        basis: BasisArg,
    },
    /// Compile small gates, run them on anyons, compare with the circuit
    /// model and classify against the 2/3 and 1/3 thresholds.
    Demo {
        /// Gates from the circuit library.
        #[arg(long, value_delimiter = ',', default_value = "x,h,phase,z")]
        gates: Vec<String>,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
enum BasisArg {
    MatrixUnits,
    Weyl,
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
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command, cli.json) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
