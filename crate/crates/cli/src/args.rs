use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lcdcodes::build::Variant;
use lcdcodes::tables::TableId;

#[derive(Parser, Debug)]
#[command(name = "lcdcodes", version, about = "LCD and self-dual codes from weighing matrices")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Codeword budget for enumeration and information-set search.
    #[arg(long, global = true, env = "LCDCODES_ENUM_CAP", default_value_t = lcdcodes::distance::DEFAULT_ENUM_CAP)]
    pub enum_cap: u64,
    /// Stop the information-set search after this message weight.
    #[arg(long, global = true)]
    pub max_weight: Option<usize>,
    /// Exit with status 2 when a distance is only a lower bound.
    #[arg(long, global = true)]
    pub require_exact: bool,
    /// Seed for sampled computations.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for table reproduction.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Paley type I Hadamard matrix of order π + 1 (π ≡ 3 mod 4).
    Paley(PaleyArgs),
    /// Symmetric conference matrix of order π + 1 (π ≡ 1 mod 4).
    Conference(PaleyArgs),
    /// Checks a weighing matrix, F_q-weighing matrix or design file.
    Validate(ValidateArgs),
    /// Builds a generator matrix and prints the condition trace.
    Build(BuildArgs),
    /// Parameters, hull and formal self-duality of a generator matrix.
    Report(ReportArgs),
    /// Orbit matrix of a weighing matrix under a permutation group.
    Orbit(OrbitArgs),
    /// Brute-force permutation automorphisms of a small matrix.
    Paut(PautArgs),
    /// Decodes received words with the projection decoder.
    Decode(DecodeArgs),
    /// Rebuilds the rows of a published table.
    Reproduce(ReproduceArgs),
}

#[derive(Args, Debug)]
pub struct PaleyArgs {
    #[arg(long)]
    pub pi: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ValidateKind {
    Weighing,
    Fq,
    Design,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = ValidateKind::Weighing)]
    pub kind: ValidateKind,
    /// Expected weight (weighing matrices).
    #[arg(long)]
    pub m: Option<i64>,
    /// Expected replication number (designs).
    #[arg(long)]
    pub r: Option<i64>,
    /// Expected pair count (designs).
    #[arg(long)]
    pub lambda: Option<i64>,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long)]
    pub variant: Variant,
    /// Weighing matrix file.
    #[arg(long, conflicts_with = "pi")]
    pub w: Option<PathBuf>,
    /// Generate the matrix from a Paley construction instead of a file.
    #[arg(long)]
    pub pi: Option<u32>,
    /// With --pi, use the conference matrix instead of P1(π).
    #[arg(long)]
    pub conference: bool,
    /// Permutation group file for the orbit variants.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Design incidence file for the right block.
    #[arg(long, conflicts_with = "identity")]
    pub b: Option<PathBuf>,
    /// Use the identity as the right block.
    #[arg(long)]
    pub identity: bool,
    /// Field element as its encoding, or `all` to sweep every α.
    #[arg(long, default_value = "0")]
    pub alpha: String,
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub out_g: Option<PathBuf>,
    #[arg(long)]
    pub out_gbar: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Generator matrix file over GF(q).
    pub g: PathBuf,
    /// Compute the minimum distance.
    #[arg(long)]
    pub distance: bool,
    /// Print the weight distribution.
    #[arg(long)]
    pub wdist: bool,
    /// Hull and LCD verdict; always reported.
    #[arg(long)]
    pub lcd: bool,
    /// Use the Hermitian inner product (q ∈ {2, 3, 4}).
    #[arg(long)]
    pub hermitian: bool,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    #[arg(long)]
    pub w: PathBuf,
    #[arg(long)]
    pub group: PathBuf,
    /// Output file for R.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PautArgs {
    #[arg(long)]
    pub w: PathBuf,
    /// Largest order accepted by the brute-force search.
    #[arg(long, default_value_t = lcdcodes::orbit::PAUT_MAX_N)]
    pub max_n: usize,
    /// Write the automorphisms as a group file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DecodeArgs {
    #[arg(long)]
    pub g: PathBuf,
    #[arg(long)]
    pub gbar: PathBuf,
    /// Certified minimum distance.
    #[arg(long)]
    pub d: usize,
    /// Received word as a token list.
    #[arg(long, conflicts_with_all = ["words", "sample"])]
    pub word: Option<String>,
    /// File with one received word per line.
    #[arg(long, conflicts_with = "sample")]
    pub words: Option<PathBuf>,
    /// Decode this many random codewords with random errors (uses --seed).
    #[arg(long)]
    pub sample: Option<usize>,
    /// Error weight for --sample; defaults to the radius.
    #[arg(long)]
    pub errors: Option<usize>,
    /// Extend φ by exhaustive nearest-codeword search (q^k ≤ 2^16).
    #[arg(long)]
    pub complete: bool,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    #[arg(long)]
    pub table: TableId,
    /// Directory holding the external matrices, designs and groups.
    #[arg(long)]
    pub data_dir: Option<PathBuf>,
    /// Treat SKIPPED rows as failures.
    #[arg(long)]
    pub strict: bool,
    /// Codeword cap for exact formal self-duality; defaults to --enum-cap.
    #[arg(long)]
    pub fsd_cap: Option<u64>,
}
