//! JSON report types. Field names are part of the published schemas under
//! `schemas/`.

use hca_dbscan::{AgreementReport, MergePolicy};
use serde::{Deserialize, Serialize};

use crate::args::Algorithm;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub policy: Option<MergePolicy>,
    pub epsilon: f64,
    pub minpts: Option<usize>,
    pub n: usize,
    pub d: usize,
    pub cluster_count: usize,
    pub noise_count: usize,
    pub wall_time_ms: f64,
    pub occupied_cells: Option<usize>,
    pub merge_tests: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    /// Baseline first, HCA second.
    pub runs: Vec<RunReport>,
    pub agreement: AgreementReport,
    pub ppi_percent: f64,
    /// Every HCA cluster lies inside one baseline cluster.
    pub refines_baseline: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRun {
    pub algorithm: Algorithm,
    pub median_ms: f64,
    pub samples_ms: Vec<f64>,
    pub cluster_count: usize,
    pub occupied_cells: Option<usize>,
    pub merge_tests: Option<u64>,
    /// All repeats produced the same labeling.
    pub deterministic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSize {
    pub n: usize,
    pub d: usize,
    pub runs: Vec<BenchRun>,
}

/// Median-time ratio between two consecutive sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Growth {
    pub algorithm: Algorithm,
    pub from_n: usize,
    pub to_n: usize,
    pub size_ratio: f64,
    pub time_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub generator: String,
    pub epsilon: f64,
    pub repeat: usize,
    pub policy: MergePolicy,
    pub sizes: Vec<BenchSize>,
    pub growth: Vec<Growth>,
}

impl BenchReport {
    pub fn growth_between(&self, algorithm: Algorithm, from_n: usize, to_n: usize) -> Option<f64> {
        self.growth
            .iter()
            .find(|g| g.algorithm == algorithm && g.from_n == from_n && g.to_n == to_n)
            .map(|g| g.time_ratio)
    }
}
