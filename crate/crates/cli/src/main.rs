use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seqrecon::Word;

mod commands;

/// Deletion balls, their intersections, and reconstruction from distinct
/// channel outputs.
#[derive(Debug, Parser)]
#[command(name = "seqrecon", version)]
pub struct Cli {
    /// Worker threads for searches and trials (default: all cores)
    #[arg(long, global = true, env = "SEQRECON_JOBS")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate or count the radius-t deletion ball of a word
    Ball(BallArgs),
    /// Deletion distance min(|x|,|y|) - LCS(x, y)
    Dist(DistArgs),
    /// Exhaustive N(n, ell, t): the largest ball intersection at distance >= ell
    ComputeN(ComputeNArgs),
    /// Check the intersection upper bound over every pair up to a length
    VerifyBounds(VerifyBoundsArgs),
    /// Tabulate N(n,ell,t) against N(n-1,ell,t) + N(n-2,ell,t-1)
    Conjecture(ConjectureArgs),
    /// Emit the CSV table of N(n, ell, t)
    Table(TableArgs),
    /// Varshamov-Tenengolts encoder, decoder and codebook export
    Vt(VtArgs),
    /// Seeded reconstruction trials, one JSON line per trial
    Simulate(SimulateArgs),
    /// Print the extremal pair A, B and its extension X, Y with their distances and intersections
    ConstructPair(ConstructPairArgs),
}

#[derive(Debug, Args)]
pub struct BallArgs {
    #[arg(long)]
    pub word: Word,
    #[arg(long)]
    pub t: usize,
    /// Print only the number of members
    #[arg(long)]
    pub count_only: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long)]
    pub x: Word,
    #[arg(long)]
    pub y: Word,
    /// Also print a longest common subsequence
    #[arg(long)]
    pub witness: bool,
}

#[derive(Debug, Args)]
pub struct ComputeNArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub ell: usize,
    #[arg(long)]
    pub t: usize,
    /// Length gap k: the second word has length n + k and radius t + k
    #[arg(long, default_value_t = 0)]
    pub gap: usize,
    /// Scan every pair instead of one per symmetry orbit
    #[arg(long)]
    pub no_symmetry: bool,
    /// Print the full result, including the maximizing pair, as JSON
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyBoundsArgs {
    #[arg(long)]
    pub ell: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    #[arg(long)]
    pub n_max: usize,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    #[arg(long)]
    pub ell: usize,
    #[arg(long)]
    pub t: usize,
    /// Defaults to t + 2
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub n_max: usize,
    #[arg(long)]
    pub t_max: usize,
    /// Longest n computed by search; longer entries use closed forms
    #[arg(long, default_value_t = 11)]
    pub exhaustive_max: usize,
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VtArgs {
    #[command(subcommand)]
    pub action: VtAction,
}

#[derive(Debug, Subcommand)]
pub enum VtAction {
    /// Systematic encoding of a message index
    Encode {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        a: u64,
        #[arg(long)]
        index: u64,
    },
    /// Recover the codeword from a word with one deletion
    Decode {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        a: u64,
        #[arg(long)]
        y: Word,
    },
    /// Write every codeword, one per line
    Codebook {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        a: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodeChoice {
    /// VT code with residue 0; handles t = 2
    Vt,
    /// Greedy code with minimum distance t; n <= 16
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub code: CodeChoice,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Distinct reads per trial (default: C(2t, t) + 1)
    #[arg(long)]
    pub m: Option<usize>,
    /// Report zero timings so repeated runs are byte-identical
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct ConstructPairArgs {
    #[arg(long)]
    pub ell: usize,
    /// Length of X and Y (default: 4 ell - 2, so X = A and Y = B)
    #[arg(long)]
    pub n: Option<usize>,
    /// Deletion radius for the intersections (default: ell)
    #[arg(long)]
    pub t: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
