//! HyperCube accelerated DBSCAN.
//!
//! Points are dropped into a sparse grid of hypercubes whose space diagonal
//! equals `epsilon`, so every pair of points sharing a cell is already within
//! `epsilon`. Clusters are the connected components of the occupied-cell
//! graph, where two cells are joined when their facing representative points
//! are within `epsilon` ([`MergePolicy::Representative`]) or when any cross
//! pair is ([`MergePolicy::Exact`]).
//!
//! The [`oracle`] module holds naive reference implementations (classic
//! DBSCAN and epsilon-connectivity components) together with partition
//! agreement metrics used to check the accelerated path.
//!
//! ```
//! use hca_dbscan::{hca_dbscan, Dataset, MergePolicy};
//!
//! let data = Dataset::from_rows(2, &[[0.0, 0.0], [0.3, 0.1], [5.0, 5.0]]).unwrap();
//! let out = hca_dbscan(&data, 0.5, MergePolicy::Representative).unwrap();
//! assert_eq!(out.labeling.cluster_count(), 2);
//! ```

pub mod dataset;
pub mod error;
pub mod generate;
pub mod grid;
pub mod hca;
pub mod io;
pub mod labeling;
pub mod metric;
pub mod offsets;
pub mod oracle;
pub mod representatives;

pub use dataset::{Dataset, Point};
pub use error::{Error, Result};
pub use generate::{generate, GeneratorKind, GeneratorSpec};
pub use grid::{assign_cell, build_grid, shift_origin, sort_dataset, CellKey, GridConfig, SparseGrid};
pub use hca::{cluster, hca_dbscan, ClusterOptions, HcaOutcome, HcaStats, MergePolicy, NeighborStrategy};
pub use labeling::{ClusterLabeling, Label};
pub use metric::Comparator;
pub use offsets::{min_cell_distance, neighbor_offsets, NeighborOffset};
pub use oracle::{connectivity_components, dbscan, rand_index, refinement_check, AgreementReport, DbscanParams};
pub use representatives::{CellRecord, Direction, RepresentativeMode};
