//! Pruned neighbor-offset enumeration.
//!
//! With cell side `epsilon / sqrt(d)`, two points in cells separated by the
//! integer displacement `delta` are at least
//! `side * sqrt(sum(max(|delta_i| - 1, 0)^2))` apart. An offset can only
//! carry a within-epsilon pair when that bound is below epsilon, which in
//! integer form is `sum(max(|delta_i| - 1, 0)^2) < d`. This predicate also
//! caps every component at `ceil(sqrt(d))`.

use std::cmp::Ordering;

/// Integer displacement between two cells, with its Chebyshev layer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NeighborOffset {
    delta: Vec<i64>,
    layer: u32,
}

impl NeighborOffset {
    pub fn new(delta: Vec<i64>) -> Self {
        let layer = delta.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0) as u32;
        NeighborOffset { delta, layer }
    }

    pub fn delta(&self) -> &[i64] {
        &self.delta
    }

    /// Chebyshev norm of the displacement: 1 for immediate neighbors.
    pub fn layer(&self) -> u32 {
        self.layer
    }

    pub fn is_diagonal(&self) -> bool {
        self.delta.iter().filter(|&&c| c != 0).count() > 1
    }

    pub fn into_delta(self) -> Vec<i64> {
        self.delta
    }
}

impl PartialOrd for NeighborOffset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NeighborOffset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.delta.cmp(&other.delta)
    }
}

/// `ceil(sqrt(d))`, the largest per-axis displacement that can pass pruning.
pub fn max_layer(d: usize) -> i64 {
    let mut r = (d as f64).sqrt() as i64;
    while (r * r) < d as i64 {
        r += 1;
    }
    while r > 0 && ((r - 1) * (r - 1)) >= d as i64 {
        r -= 1;
    }
    r
}

/// Squared gap in cell units: `sum(max(|delta_i| - 1, 0)^2)`.
pub fn gap_units_sq(delta: &[i64]) -> u64 {
    delta
        .iter()
        .map(|c| {
            let g = c.unsigned_abs().saturating_sub(1);
            g * g
        })
        .sum()
}

/// True when cells separated by `delta` may hold a pair closer than epsilon.
#[inline]
pub fn passes_pruning(delta: &[i64]) -> bool {
    gap_units_sq(delta) < delta.len() as u64
}

/// Infimum of distances between a point in a cell and a point in the cell
/// displaced by `delta`.
pub fn min_cell_distance(delta: &[i64], side: f64) -> f64 {
    side * (gap_units_sq(delta) as f64).sqrt()
}

/// All nonzero offsets passing the pruning predicate, sorted lexicographically.
///
/// The output grows quickly with `d` (see [`neighbor_offset_count`]); callers
/// working in high dimension should check the count first.
pub fn neighbor_offsets(d: usize) -> Vec<NeighborOffset> {
    if d == 0 {
        return Vec::new();
    }
    let reach = max_layer(d);
    let budget = d as u64;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(d);
    enumerate(d, reach, budget, 0, &mut current, &mut out);
    out
}

fn enumerate(
    d: usize,
    reach: i64,
    budget: u64,
    used: u64,
    current: &mut Vec<i64>,
    out: &mut Vec<NeighborOffset>,
) {
    if current.len() == d {
        if current.iter().any(|&c| c != 0) {
            out.push(NeighborOffset::new(current.clone()));
        }
        return;
    }
    for c in -reach..=reach {
        let g = c.unsigned_abs().saturating_sub(1);
        let used = used + g * g;
        if used >= budget {
            continue;
        }
        current.push(c);
        enumerate(d, reach, budget, used, current, out);
        current.pop();
    }
}

/// Number of offsets [`neighbor_offsets`] would return, computed without
/// enumerating them. Saturates at `u128::MAX`.
pub fn neighbor_offset_count(d: usize) -> u128 {
    if d == 0 {
        return 0;
    }
    let reach = max_layer(d) as u64;
    let budget = d;
    // ways[s] = number of prefixes with squared gap exactly s
    let mut ways = vec![0u128; budget];
    ways[0] = 1;
    for _ in 0..d {
        let mut next = vec![0u128; budget];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            // |c| <= 1 costs nothing: three choices
            next[s] = next[s].saturating_add(w.saturating_mul(3));
            for m in 2..=reach {
                let cost = ((m - 1) * (m - 1)) as usize;
                if s + cost < budget {
                    next[s + cost] = next[s + cost].saturating_add(w.saturating_mul(2));
                }
            }
        }
        ways = next;
    }
    ways.iter().fold(0u128, |acc, &w| acc.saturating_add(w)) - 1
}

/// Number of all-corner offsets (every component at magnitude
/// `ceil(sqrt(d))`) that fail pruning. For `d <= 4` these are the only pruned
/// offsets in the `(2 * ceil(sqrt(d)) + 1)^d` block; from `d = 5` on, pruning
/// removes non-corner offsets as well.
pub fn pruned_corner_count(d: usize) -> u128 {
    if max_layer(d) >= 2 {
        1u128 << d
    } else {
        0
    }
}
