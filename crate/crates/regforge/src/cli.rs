//! Command-line definitions.

use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use regforge_core::Rational;

use crate::params::{parse_range, parse_rational};

#[derive(Debug, Parser)]
#[command(name = "regforge", version, about = "Exact regularity checkers, growth arithmetic and instance generators for k-partite hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Check an instance (and optional partition) against a regularity notion.
    Check(CheckArgs),
    /// Generate an instance file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Print growth-function values or verify the inequalities between them.
    Growth(GrowthArgs),
    /// Run a batch of seeded experiments.
    Suite(SuiteArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Notion {
    /// ⟨δ⟩-regularity of the partition for the k-graph.
    Delta,
    /// ε-regularity (two-sided, in polyads).
    Rs,
    /// Clique count of a complex against the dense counting band.
    Counting,
    /// The reduction from f-equitable partitions to ⟨2√δ⟩-regular auxiliary pairs.
    Reduction,
}

impl Notion {
    pub fn as_str(self) -> &'static str {
        match self {
            Notion::Delta => "delta",
            Notion::Rs => "rs",
            Notion::Counting => "counting",
            Notion::Reduction => "reduction",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EditsArg {
    /// No edits.
    Perfect,
    /// Exhaustive search for a smallest edit set (tiny inputs only).
    Search,
    /// Apply the edits in --certificate.
    Certificate,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Instance JSON (a complex for --notion counting).
    pub instance: PathBuf,
    /// Partition JSON of rank k−1; the classes are used when omitted.
    pub partition: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Notion::Delta)]
    pub notion: Notion,
    #[arg(long, value_parser = parse_rational)]
    pub delta: Option<Rational>,
    #[arg(long, value_parser = parse_rational)]
    pub eps: Option<Rational>,
    /// Target density for --notion rs without a partition.
    #[arg(long, value_parser = parse_rational)]
    pub d: Option<Rational>,
    #[arg(long, value_parser = parse_rational)]
    pub gamma: Option<Rational>,
    /// Level densities d_2,…,d_{k−1} for --notion counting.
    #[arg(long, value_delimiter = ',', value_parser = parse_rational)]
    pub densities: Vec<Rational>,
    #[arg(long, value_enum, default_value_t = EditsArg::Perfect)]
    pub edits: EditsArg,
    /// Edit certificate JSON: `{"edits": [{"added": [...], "removed": [...]}]}`.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Triangle-free tripartite graph from a random one, optionally blown up.
    Counterexample(CounterexampleArgs),
    /// Tight 2k-cycle pasting of assembled k-graphs.
    Cycle(CycleArgs),
    /// Successively refined edge equipartitions H_1 ≻ … ≻ H_s.
    Assemble(AssembleArgs),
    /// Random complex with given level densities.
    Complex(ComplexArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CounterexampleArgs {
    /// Class size.
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_parser = parse_rational)]
    pub q: Rational,
    #[arg(long, value_parser = parse_rational)]
    pub delta: Rational,
    /// Blow-up factor.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CycleArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub s: usize,
    /// Ground set size; defaults to the least size the vertex chain allows.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AssembleArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub s: usize,
    /// Class size; defaults to the least size the vertex chain allows.
    #[arg(long)]
    pub n: Option<usize>,
    /// Use identity index maps instead of the growth functions.
    #[arg(long)]
    pub toy: bool,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ComplexArgs {
    /// Number of classes.
    #[arg(long)]
    pub classes: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', value_parser = parse_rational)]
    pub densities: Vec<Rational>,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GrowthFn {
    /// A_k(i).
    A,
    /// A_k*(i).
    AStar,
    /// Ack_k(i).
    Ack,
    /// m_k(i).
    M,
    /// t(i).
    T,
    /// e(i).
    E,
    /// δ_k.
    Delta,
    /// α_k.
    Alpha,
    /// c_k.
    C,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    /// `K RANGE` for functions of (k, i); `RANGE` for t and e; a range of k
    /// for δ, α and c.
    pub args: Vec<String>,
    #[arg(long, value_enum, default_value_t = GrowthFn::A)]
    pub function: GrowthFn,
    /// Shorthand for `--function delta RANGE`.
    #[arg(long, value_parser = parse_range)]
    pub delta: Option<RangeInclusive<u64>>,
    /// Verify every inequality for 2 ≤ k ≤ K and emit the JSON report.
    #[arg(long)]
    pub verify: Option<u32>,
    /// Largest i used by --verify.
    #[arg(long, default_value_t = 3)]
    pub max_i: u64,
    /// Print values as JSON.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// Suite JSON; a small built-in suite runs when omitted.
    pub config: Option<PathBuf>,
    /// Worker threads across instances.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Also write the per-instance rows as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
