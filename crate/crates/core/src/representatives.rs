//! Per-cell representative points.
//!
//! Each occupied cell keeps, for a boundary direction, the member closest to
//! that direction's ideal position on the cell surface. Two cells facing each
//! other are compared through their facing representatives only.

use std::collections::HashMap;

use crate::dataset::{Dataset, Point};
use crate::error::{Error, Result};
use crate::grid::{assign_cell, CellKey, GridConfig};
use crate::metric::distance_sq;
use crate::offsets::NeighborOffset;

/// Sign vector in `{-1, 0, 1}^d`, not all zero, naming a face, edge or
/// corner of a cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction(Box<[i8]>);

impl Direction {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() || signs.iter().all(|&s| s == 0) {
            return Err(Error::InvalidParameter("direction must have a nonzero component".into()));
        }
        if signs.iter().any(|s| !(-1..=1).contains(s)) {
            return Err(Error::InvalidParameter("direction components must be -1, 0 or 1".into()));
        }
        Ok(Direction(signs.into_boxed_slice()))
    }

    /// Componentwise sign of a nonzero displacement.
    pub fn sign_of(delta: &[i64]) -> Option<Self> {
        if delta.iter().all(|&c| c == 0) {
            return None;
        }
        Some(Direction(delta.iter().map(|c| c.signum() as i8).collect()))
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn negated(&self) -> Self {
        Direction(self.0.iter().map(|s| -s).collect())
    }

    /// All `3^d - 1` directions in lexicographic order.
    pub fn all(d: usize) -> Vec<Direction> {
        let mut out = Vec::new();
        let mut current = vec![-1i8; d];
        if d == 0 {
            return out;
        }
        loop {
            if current.iter().any(|&s| s != 0) {
                out.push(Direction(current.clone().into_boxed_slice()));
            }
            // odometer increment over {-1, 0, 1}
            let mut axis = d;
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                if current[axis] < 1 {
                    current[axis] += 1;
                    break;
                }
                current[axis] = -1;
            }
        }
    }

    /// Compass name of a 2-D direction, with axis 0 pointing right and axis 1 up.
    pub fn compass_name(&self) -> Option<&'static str> {
        let name = match *self.0 {
            [0, 1] => "Top",
            [1, 1] => "TopRight",
            [1, 0] => "Right",
            [1, -1] => "BottomRight",
            [0, -1] => "Bottom",
            [-1, -1] => "BottomLeft",
            [-1, 0] => "Left",
            [-1, 1] => "TopLeft",
            _ => return None,
        };
        Some(name)
    }
}

/// Facing direction pair for a neighbor offset: the source cell looks along
/// `sign(delta)`, the target cell looks back along `-sign(delta)`.
pub fn paired_direction(offset: &NeighborOffset) -> (Direction, Direction) {
    let out = Direction::sign_of(offset.delta()).expect("neighbor offsets are nonzero");
    let back = out.negated();
    (out, back)
}

/// Point on the cell boundary furthest toward `direction`:
/// `center + direction * side / 2`, in origin-shifted coordinates.
pub fn ideal_position(key: &CellKey, direction: &Direction, config: &GridConfig) -> Vec<f64> {
    let side = config.side();
    key.coords()
        .iter()
        .zip(direction.signs())
        .map(|(&k, &s)| (k as f64 + 0.5 + 0.5 * s as f64) * side)
        .collect()
}

/// When representatives are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RepresentativeMode {
    /// On first request per direction, then memoized.
    #[default]
    Lazy,
    /// Every direction maintained on every insertion. Only for small `d`.
    Eager,
}

impl RepresentativeMode {
    pub const EAGER_MAX_DIM: usize = 10;
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Representative {
    index: usize,
    dist_sq: f64,
}

impl Representative {
    // (distance, index) lexicographic, so results do not depend on insertion order
    fn beats(&self, other: &Representative) -> bool {
        self.dist_sq < other.dist_sq || (self.dist_sq == other.dist_sq && self.index < other.index)
    }
}

/// One occupied hypercube.
#[derive(Debug, Clone)]
pub struct CellRecord {
    key: CellKey,
    members: Vec<usize>,
    representatives: HashMap<Direction, Representative>,
    visited: bool,
    cluster: Option<u32>,
}

impl CellRecord {
    pub fn new(key: CellKey) -> Self {
        CellRecord {
            key,
            members: Vec::new(),
            representatives: HashMap::new(),
            visited: false,
            cluster: None,
        }
    }

    pub fn key(&self) -> &CellKey {
        &self.key
    }

    /// Stable point indices in insertion order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn visited(&self) -> bool {
        self.visited
    }

    pub fn cluster(&self) -> Option<u32> {
        self.cluster
    }

    /// Directions whose representative has already been computed.
    pub fn memoized(&self) -> usize {
        self.representatives.len()
    }

    pub fn cached_representative(&self, direction: &Direction) -> Option<usize> {
        self.representatives.get(direction).map(|r| r.index)
    }

    /// Adds `point` (origin-shifted) to this cell and refreshes every
    /// representative already held.
    pub fn update_representatives(
        &mut self,
        point: Point<'_>,
        config: &GridConfig,
        mode: RepresentativeMode,
    ) -> Result<()> {
        if assign_cell(point.coords, config)? != self.key {
            return Err(Error::WrongCell {
                index: point.index,
                key: self.key.coords().to_vec(),
            });
        }
        if self.members.is_empty() && mode == RepresentativeMode::Eager {
            for direction in Direction::all(config.dim()) {
                let ideal = ideal_position(&self.key, &direction, config);
                let rep = Representative {
                    index: point.index,
                    dist_sq: distance_sq(point.coords, &ideal),
                };
                self.representatives.insert(direction, rep);
            }
        } else {
            for (direction, current) in self.representatives.iter_mut() {
                let ideal = ideal_position(&self.key, direction, config);
                let candidate = Representative {
                    index: point.index,
                    dist_sq: distance_sq(point.coords, &ideal),
                };
                if candidate.beats(current) {
                    *current = candidate;
                }
            }
        }
        self.members.push(point.index);
        Ok(())
    }

    /// Representative toward `direction`. `shifted` must hold the
    /// origin-shifted points in stable-index order.
    pub fn representative_for(
        &mut self,
        direction: &Direction,
        config: &GridConfig,
        shifted: &Dataset,
    ) -> usize {
        if let Some(rep) = self.representatives.get(direction) {
            return rep.index;
        }
        let ideal = ideal_position(&self.key, direction, config);
        let best = self
            .members
            .iter()
            .map(|&index| Representative {
                index,
                dist_sq: distance_sq(shifted.row(index), &ideal),
            })
            .reduce(|best, c| if c.beats(&best) { c } else { best })
            .expect("occupied cells have members");
        self.representatives.insert(direction.clone(), best);
        best.index
    }

    pub(crate) fn reset_cluster(&mut self) {
        self.visited = false;
        self.cluster = None;
    }

    pub(crate) fn assign_cluster(&mut self, id: u32) {
        self.visited = true;
        self.cluster = Some(id);
    }
}
