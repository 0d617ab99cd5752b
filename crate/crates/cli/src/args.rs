use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use simplegrp::dataset::{FeatureMode, PairFilter};

#[derive(Parser, Debug)]
#[command(
    name = "simplegrp",
    version,
    about = "Simplicity of 2-generated permutation groups"
)]
pub struct Cli {
    /// Worker threads for parallel sweeps and training (default: one per core).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build, inspect and count generator-pair datasets.
    #[command(subcommand)]
    Dataset(DatasetCmd),
    /// Train a classifier (k-fold, or a single split with --train-size).
    Train(TrainArgs),
    /// k-fold cross-validation.
    Crossval(TrainArgs),
    /// Finite checks of the generator constraints.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterArg {
    Distinct,
    DistinctNonid,
}

impl From<FilterArg> for PairFilter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::Distinct => PairFilter::Distinct,
            FilterArg::DistinctNonid => PairFilter::DistinctNonIdentity,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeaturesArg {
    Matrices,
    Invariants,
    InvariantsOrders,
    OrderProfile,
}

impl From<FeaturesArg> for FeatureMode {
    fn from(f: FeaturesArg) -> Self {
        match f {
            FeaturesArg::Matrices => FeatureMode::Matrices,
            FeaturesArg::Invariants => FeatureMode::Invariants,
            FeaturesArg::InvariantsOrders => FeatureMode::InvariantsOrders,
            FeaturesArg::OrderProfile => FeatureMode::OrderProfile,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SeedArg {
    /// Master seed; falls back to SIMPLEGRP_SEED, then 0.
    #[arg(long, env = "SIMPLEGRP_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum DatasetCmd {
    /// Label every admitted pair of degree n.
    Generate(GenerateArgs),
    /// Label uniformly drawn distinct pairs.
    Sample(SampleArgs),
    /// Keep all simple entries and as many non-simple ones.
    Balance(BalanceArgs),
    /// Class counts of a dataset file.
    Stats(StatsArgs),
    /// Pair counts per isomorphism type (n <= 6).
    Census(CensusArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = FilterArg::Distinct)]
    pub filter: FilterArg,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    /// Number of pairs to draw.
    #[arg(long)]
    pub sample: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long, value_enum, default_value_t = FilterArg::Distinct)]
    pub filter: FilterArg,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct BalanceArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Keep this percentage of the balanced set (per class, nested across percentages).
    #[arg(long, default_value_t = 100.0)]
    pub percent: f64,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct StatsArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// CSV output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct CensusArgs {
    #[arg(long)]
    pub n: usize,
    /// CSV output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct TrainArgs {
    /// Dataset file; otherwise the data is built from --n.
    #[arg(long = "in", conflicts_with = "n")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = FilterArg::Distinct)]
    pub filter: FilterArg,
    /// Draw a balanced sample of this many entries instead of enumerating.
    #[arg(long)]
    pub sample: Option<usize>,
    /// Percentage of the balanced dataset to use.
    #[arg(long, default_value_t = 100.0)]
    pub percent: f64,
    #[arg(long, value_enum, default_value_t = FeaturesArg::Matrices)]
    pub features: FeaturesArg,
    /// n5, n6, n7, n8, exp2 or exp3 (default: n<degree>).
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub epochs: Option<usize>,
    #[arg(long)]
    pub batch: Option<usize>,
    #[arg(long)]
    pub lr: Option<f64>,
    #[arg(long)]
    pub momentum: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub folds: Option<usize>,
    /// Train on this many entries and test on the rest instead of k-fold.
    #[arg(long = "train-size")]
    pub train_size: Option<usize>,
    #[command(flatten)]
    pub seed: SeedArg,
    /// Per-epoch curves as CSV.
    #[arg(long)]
    pub curves: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Sign and trace constraints on generators of simple groups.
    Proposition(SweepArgs),
    /// Even permutations with n-4 fixed points are involutions.
    Involution(DegreesArgs),
    /// Two such involutions generate a non-simple dihedral group.
    Dihedral(DegreesArgs),
    /// Fixed-point ratio constraint on generators of simple groups.
    Corollary(SweepArgs),
    /// Bundled Mathieu group generators against their printed signs and traces.
    Mathieu(MathieuArgs),
    /// (|G|, element-order set) separates the simple groups of the census.
    Theorem1(DegreesArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct SweepArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    /// Pairs to draw in sample mode.
    #[arg(long, default_value_t = 1_000_000)]
    pub sample: usize,
    #[command(flatten)]
    pub seed: SeedArg,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct DegreesArgs {
    /// A single degree (default: the command's standard range).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct MathieuArgs {
    #[arg(long)]
    pub report: Option<PathBuf>,
}
