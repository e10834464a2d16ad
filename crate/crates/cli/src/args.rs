use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hca_dbscan::{Comparator, MergePolicy};

use crate::genspec::GeneratorTemplate;

#[derive(Debug, Parser)]
#[command(name = "hca", version, about = "HyperCube accelerated DBSCAN clustering and benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cluster a CSV dataset and write per-point labels.
    Cluster(ClusterArgs),
    /// Run HCA and a reference algorithm on the same data and report agreement.
    Compare(CompareArgs),
    /// Time algorithms over increasing dataset sizes.
    Bench(BenchArgs),
    /// Write a synthetic dataset as CSV.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Hca,
    Dbscan,
    Components,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Baseline {
    Dbscan,
    Components,
}

impl From<Baseline> for Algorithm {
    fn from(b: Baseline) -> Self {
        match b {
            Baseline::Dbscan => Algorithm::Dbscan,
            Baseline::Components => Algorithm::Components,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Representative,
    Exact,
}

impl From<PolicyArg> for MergePolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Representative => MergePolicy::Representative,
            PolicyArg::Exact => MergePolicy::Exact,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComparatorArg {
    Le,
    Lt,
}

impl From<ComparatorArg> for Comparator {
    fn from(c: ComparatorArg) -> Self {
        match c {
            ComparatorArg::Le => Comparator::Le,
            ComparatorArg::Lt => Comparator::Lt,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Blobs,
    Rings,
    Uniform,
}

pub fn positive_epsilon(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("epsilon must be positive".to_string())
    }
}

fn positive_count(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("{s:?} must be a positive integer")),
    }
}

fn delimiter(s: &str) -> Result<u8, String> {
    match s.as_bytes() {
        [b] if b.is_ascii() => Ok(*b),
        _ if s == "\\t" || s == "tab" => Ok(b'\t'),
        _ => Err("delimiter must be a single ASCII character".to_string()),
    }
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Numeric CSV; every column is a coordinate.
    #[arg(long)]
    pub input: PathBuf,
    /// Skip the first row.
    #[arg(long)]
    pub header: bool,
    #[arg(long, default_value = ",", value_parser = delimiter)]
    pub delimiter: u8,
}

#[derive(Debug, Clone, Args)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_parser = positive_epsilon)]
    pub epsilon: f64,
    #[arg(long, value_enum)]
    pub algorithm: Algorithm,
    /// Core-point threshold for dbscan (neighborhood counts the point itself).
    #[arg(long, default_value_t = 1, value_parser = positive_count)]
    pub minpts: usize,
    #[arg(long, value_enum, default_value_t = PolicyArg::Representative)]
    pub policy: PolicyArg,
    /// Relabel clusters smaller than this as noise.
    #[arg(long, value_parser = positive_count)]
    pub min_cluster_size: Option<usize>,
    /// Distance comparator for dbscan/components [default: le for dbscan, lt for components].
    #[arg(long, value_enum)]
    pub comparator: Option<ComparatorArg>,
    /// Labels CSV (`index,cluster`, noise = -1).
    #[arg(long)]
    pub output: PathBuf,
    /// JSON run report.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_parser = positive_epsilon)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1, value_parser = positive_count)]
    pub minpts: usize,
    #[arg(long, value_enum, default_value_t = PolicyArg::Representative)]
    pub policy: PolicyArg,
    #[arg(long, value_enum)]
    pub baseline: Baseline,
    /// Baseline comparator; strict by default to match HCA merging.
    #[arg(long, value_enum, default_value_t = ComparatorArg::Lt)]
    pub comparator: ComparatorArg,
    #[arg(long)]
    pub report: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Generator description, e.g. `uniform:dims=2,density=20,seed=1`.
    #[arg(long)]
    pub generator: GeneratorTemplate,
    /// Comma-separated dataset sizes.
    #[arg(long, value_delimiter = ',', required = true, value_parser = positive_count)]
    pub sizes: Vec<usize>,
    #[arg(long, value_parser = positive_epsilon)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 5, value_parser = positive_count)]
    pub repeat: usize,
    /// Algorithms to time.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "hca,components")]
    pub algorithms: Vec<Algorithm>,
    #[arg(long, value_enum, default_value_t = PolicyArg::Representative)]
    pub policy: PolicyArg,
    #[arg(long, default_value_t = 1, value_parser = positive_count)]
    pub minpts: usize,
    #[arg(long)]
    pub report: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long, value_parser = positive_count)]
    pub n: usize,
    #[arg(long, default_value_t = 2, value_parser = positive_count)]
    pub dims: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: PathBuf,
    /// blobs: number of clusters.
    #[arg(long, default_value_t = 3)]
    pub clusters: usize,
    /// blobs: standard deviation per axis.
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// blobs: lattice spacing between centers, in sigmas (at least 6).
    #[arg(long, default_value_t = 20.0)]
    pub separation: f64,
    /// rings: comma-separated radii.
    #[arg(long, value_delimiter = ',', default_value = "1,3")]
    pub radii: Vec<f64>,
    /// rings: radial thickness of each annulus.
    #[arg(long, default_value_t = 0.2)]
    pub thickness: f64,
    /// uniform: side of the sampling box.
    #[arg(long, default_value_t = 1.0)]
    pub extent: f64,
}
