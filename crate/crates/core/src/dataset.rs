use crate::error::{Error, Result};

/// Borrowed view of one point: its stable index and its coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<'a> {
    pub index: usize,
    pub coords: &'a [f64],
}

/// Ordered collection of `dim`-dimensional points stored row-major.
///
/// Every row carries the stable index it had in the original input, so
/// reordered copies (see [`crate::sort_dataset`]) still report original
/// identities.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    dim: usize,
    coords: Vec<f64>,
    ids: Vec<usize>,
}

impl Dataset {
    /// Builds a dataset from a flat row-major buffer. Indices are `0..n`.
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: coords.len() % dim,
            });
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / dim,
                column: pos % dim,
            });
        }
        let ids = (0..coords.len() / dim).collect();
        Ok(Dataset { dim, coords, ids })
    }

    pub fn from_rows<R: AsRef<[f64]>>(dim: usize, rows: &[R]) -> Result<Self> {
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            coords.extend_from_slice(row);
        }
        Dataset::new(dim, coords)
    }

    pub fn empty(dim: usize) -> Result<Self> {
        Dataset::new(dim, Vec::new())
    }

    /// Rebuilds a dataset from rows that already carry their stable indices.
    pub(crate) fn from_parts(dim: usize, coords: Vec<f64>, ids: Vec<usize>) -> Self {
        debug_assert_eq!(coords.len(), ids.len() * dim);
        Dataset { dim, coords, ids }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Point stored at row `row` (not necessarily the point with index `row`).
    pub fn point(&self, row: usize) -> Point<'_> {
        Point {
            index: self.ids[row],
            coords: self.row(row),
        }
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.coords[row * self.dim..(row + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = Point<'_>> + '_ {
        self.coords
            .chunks_exact(self.dim)
            .zip(&self.ids)
            .map(|(coords, &index)| Point { index, coords })
    }

    pub fn indices(&self) -> &[usize] {
        &self.ids
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }

    /// Copy with rows rearranged so that row `i` holds the point whose
    /// stable index is `i`.
    pub fn in_index_order(&self) -> Dataset {
        let mut coords = vec![0.0; self.coords.len()];
        for p in self.points() {
            coords[p.index * self.dim..(p.index + 1) * self.dim].copy_from_slice(p.coords);
        }
        Dataset::from_parts(self.dim, coords, (0..self.len()).collect())
    }
}
