use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dataset is empty")]
    EmptyInput,

    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),

    #[error("dimensionality must be at least 1")]
    ZeroDimension,

    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {column} of point {row} is not finite")]
    NonFinite { row: usize, column: usize },

    #[error("coordinate {axis} is negative ({value}); points must be origin-shifted")]
    NotOriginShifted { axis: usize, value: f64 },

    #[error("point {index} does not lie inside cell {key:?}")]
    WrongCell { index: usize, key: Vec<i64> },

    #[error("grid was built for epsilon {grid} but clustering requested {requested}")]
    ConfigMismatch { grid: f64, requested: f64 },

    #[error("labelings have different lengths ({left} vs {right})")]
    LabelingMismatch { left: usize, right: usize },

    #[error("{kind} generator does not support {dim} dimensions")]
    UnsupportedDimension { kind: &'static str, dim: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("row {row}: expected {expected} columns, found {found}")]
    Schema { row: usize, expected: usize, found: usize },

    #[error("row {row}, column {column}: cannot parse {field:?} as a finite number")]
    Parse { row: usize, column: usize, field: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
