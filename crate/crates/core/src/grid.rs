//! Origin-shifted sparse hypercube grid.

use std::collections::HashMap;

use crate::dataset::{Dataset, Point};
use crate::error::{Error, Result};
use crate::representatives::{CellRecord, Direction, RepresentativeMode};

/// Geometry of the overlay: cells are half-open boxes of side
/// `epsilon / sqrt(dim)` measured from `origin`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    epsilon: f64,
    dim: usize,
    origin: Vec<f64>,
    side: f64,
}

impl GridConfig {
    pub fn new(epsilon: f64, origin: Vec<f64>) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidEpsilon(epsilon));
        }
        let dim = origin.len();
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let side = epsilon / (dim as f64).sqrt();
        Ok(GridConfig {
            epsilon,
            dim,
            origin,
            side,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn side(&self) -> f64 {
        self.side
    }
}

/// Integer cell coordinates. Ordering is lexicographic, which is also the
/// seed order used when numbering clusters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellKey(Vec<i64>);

impl CellKey {
    pub fn new(coords: Vec<i64>) -> Self {
        CellKey(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn offset_by(&self, delta: &[i64]) -> CellKey {
        CellKey(self.0.iter().zip(delta).map(|(k, d)| k + d).collect())
    }

    /// Displacement `other - self`.
    pub fn delta_to(&self, other: &CellKey) -> Vec<i64> {
        other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()
    }
}

impl std::borrow::Borrow<[i64]> for CellKey {
    fn borrow(&self) -> &[i64] {
        &self.0
    }
}

/// Subtracts the componentwise minimum so every coordinate is non-negative.
pub fn shift_origin(dataset: &Dataset) -> Result<(Dataset, Vec<f64>)> {
    if dataset.is_empty() {
        return Err(Error::EmptyInput);
    }
    let dim = dataset.dim();
    let mut origin = vec![f64::INFINITY; dim];
    for p in dataset.points() {
        for (o, &c) in origin.iter_mut().zip(p.coords) {
            *o = o.min(c);
        }
    }
    let mut coords = Vec::with_capacity(dataset.as_flat().len());
    for p in dataset.points() {
        coords.extend(p.coords.iter().zip(&origin).map(|(c, o)| c - o));
    }
    let shifted = Dataset::from_parts(dim, coords, dataset.indices().to_vec());
    Ok((shifted, origin))
}

/// Lexicographic order on coordinates, ties broken by original index.
pub fn sort_dataset(dataset: &Dataset) -> Dataset {
    let mut rows: Vec<usize> = (0..dataset.len()).collect();
    rows.sort_by(|&a, &b| {
        let (pa, pb) = (dataset.point(a), dataset.point(b));
        pa.coords
            .iter()
            .zip(pb.coords)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(pa.index.cmp(&pb.index))
    });
    let mut coords = Vec::with_capacity(dataset.as_flat().len());
    let mut ids = Vec::with_capacity(dataset.len());
    for row in rows {
        let p = dataset.point(row);
        coords.extend_from_slice(p.coords);
        ids.push(p.index);
    }
    Dataset::from_parts(dataset.dim(), coords, ids)
}

/// Cell of an origin-shifted point: `floor(coord / side)` per axis.
pub fn assign_cell(coords: &[f64], config: &GridConfig) -> Result<CellKey> {
    if coords.len() != config.dim {
        return Err(Error::DimensionMismatch {
            expected: config.dim,
            found: coords.len(),
        });
    }
    let mut key = Vec::with_capacity(coords.len());
    for (axis, &c) in coords.iter().enumerate() {
        if c < 0.0 {
            return Err(Error::NotOriginShifted { axis, value: c });
        }
        key.push((c / config.side).floor() as i64);
    }
    Ok(CellKey(key))
}

/// Occupied cells only, kept in lexicographic key order.
#[derive(Debug, Clone)]
pub struct SparseGrid {
    config: GridConfig,
    cells: Vec<CellRecord>,
    lookup: HashMap<CellKey, usize>,
    original: Dataset,
    shifted: Dataset,
}

/// Builds the grid with lazily computed representatives.
pub fn build_grid(dataset: &Dataset, epsilon: f64) -> Result<SparseGrid> {
    SparseGrid::build(dataset, epsilon, RepresentativeMode::Lazy)
}

impl SparseGrid {
    pub fn build(dataset: &Dataset, epsilon: f64, mode: RepresentativeMode) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidEpsilon(epsilon));
        }
        if mode == RepresentativeMode::Eager && dataset.dim() > RepresentativeMode::EAGER_MAX_DIM {
            return Err(Error::InvalidParameter(format!(
                "eager representatives need dim <= {}, got {}",
                RepresentativeMode::EAGER_MAX_DIM,
                dataset.dim()
            )));
        }
        let (shifted, origin) = shift_origin(dataset)?;
        let config = GridConfig::new(epsilon, origin)?;

        let mut by_key: HashMap<CellKey, CellRecord> = HashMap::new();
        for p in sort_dataset(&shifted).points() {
            let key = assign_cell(p.coords, &config)?;
            by_key
                .entry(key.clone())
                .or_insert_with(|| CellRecord::new(key))
                .update_representatives(p, &config, mode)?;
        }

        let mut cells: Vec<CellRecord> = by_key.into_values().collect();
        cells.sort_unstable_by(|a, b| a.key().cmp(b.key()));
        let lookup = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.key().clone(), i))
            .collect();

        Ok(SparseGrid {
            config,
            cells,
            lookup,
            original: dataset.in_index_order(),
            shifted: shifted.in_index_order(),
        })
    }

    pub fn config(&self) -> &GridConfig {
        &self.config
    }

    pub fn dim(&self) -> usize {
        self.config.dim
    }

    /// Occupied cells in lexicographic key order.
    pub fn cells(&self) -> &[CellRecord] {
        &self.cells
    }

    pub(crate) fn cells_mut(&mut self) -> &mut [CellRecord] {
        &mut self.cells
    }

    pub fn occupied_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn point_count(&self) -> usize {
        self.original.len()
    }

    pub fn cell_id(&self, key: &CellKey) -> Option<usize> {
        self.lookup.get(key).copied()
    }

    pub fn cell_id_at(&self, coords: &[i64]) -> Option<usize> {
        self.lookup.get(coords).copied()
    }

    pub fn cell(&self, key: &CellKey) -> Option<&CellRecord> {
        self.cell_id(key).map(|i| &self.cells[i])
    }

    /// Input coordinates of the point with stable index `index`.
    pub fn original_coords(&self, index: usize) -> &[f64] {
        self.original.row(index)
    }

    /// Origin-shifted coordinates of the point with stable index `index`.
    pub fn shifted_coords(&self, index: usize) -> &[f64] {
        self.shifted.row(index)
    }

    pub fn shifted_point(&self, index: usize) -> Point<'_> {
        self.shifted.point(index)
    }

    /// Representative of cell `cell_id` toward `direction`, computed on first use.
    pub fn representative(&mut self, cell_id: usize, direction: &Direction) -> usize {
        self.cells[cell_id].representative_for(direction, &self.config, &self.shifted)
    }
}
