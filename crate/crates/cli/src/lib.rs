//! Command-line surface for HCA-DBSCAN: clustering runs, algorithm
//! comparisons, scaling benchmarks and synthetic data generation.

pub mod args;
pub mod commands;
pub mod error;
pub mod genspec;
pub mod report;
pub mod timing;

pub use error::CliError;
