//! Cell-graph clustering.
//!
//! The output is defined declaratively: clusters are the connected
//! components of the graph whose vertices are occupied cells and whose edges
//! join cells at a pruned neighbor offset that pass the merge condition.
//! Every member of a cell inherits its cell's component id. Components are
//! numbered from 1 in order of their lexicographically smallest cell.

use std::collections::VecDeque;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::grid::{CellKey, SparseGrid};
use crate::labeling::{ClusterLabeling, Label};
use crate::metric::Comparator;
use crate::offsets::{max_layer, neighbor_offset_count, neighbor_offsets, passes_pruning, NeighborOffset};
use crate::representatives::{paired_direction, RepresentativeMode};

/// How two neighboring cells decide whether to merge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MergePolicy {
    /// Facing representative points closer than epsilon.
    #[default]
    Representative,
    /// Any cross-cell member pair closer than epsilon.
    Exact,
}

impl FromStr for MergePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "representative" => Ok(MergePolicy::Representative),
            "exact" => Ok(MergePolicy::Exact),
            other => Err(format!("unknown merge policy {other:?} (expected representative or exact)")),
        }
    }
}

impl std::fmt::Display for MergePolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MergePolicy::Representative => "representative",
            MergePolicy::Exact => "exact",
        })
    }
}

/// How candidate neighbor cells are found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NeighborStrategy {
    /// Offset probing when the pruned offset set is no larger than the
    /// number of occupied cells, scanning otherwise.
    #[default]
    Auto,
    /// Probe every pruned neighbor offset in the cell map.
    Offsets,
    /// Walk occupied cells in the axis-0 window and apply the pruning predicate.
    Scan,
}

/// Order in which the work list of a component is consumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraversalOrder {
    #[default]
    DepthFirst,
    BreadthFirst,
}

#[derive(Debug, Clone, Default)]
pub struct ClusterOptions {
    pub policy: MergePolicy,
    pub strategy: NeighborStrategy,
    pub order: TraversalOrder,
    pub representatives: RepresentativeMode,
    /// Clusters smaller than this are relabeled as noise.
    pub min_cluster_size: Option<usize>,
}

impl ClusterOptions {
    pub fn with_policy(policy: MergePolicy) -> Self {
        ClusterOptions {
            policy,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HcaStats {
    pub occupied_cells: usize,
    /// Number of merge-condition evaluations.
    pub merge_tests: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HcaOutcome {
    pub labeling: ClusterLabeling,
    pub stats: HcaStats,
}

/// Builds the grid and clusters in one call.
pub fn hca_dbscan(dataset: &Dataset, epsilon: f64, policy: MergePolicy) -> Result<HcaOutcome> {
    hca_dbscan_with(dataset, epsilon, &ClusterOptions::with_policy(policy))
}

pub fn hca_dbscan_with(dataset: &Dataset, epsilon: f64, options: &ClusterOptions) -> Result<HcaOutcome> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    if dataset.is_empty() {
        return Ok(HcaOutcome {
            labeling: ClusterLabeling::default(),
            stats: HcaStats::default(),
        });
    }
    let mut grid = SparseGrid::build(dataset, epsilon, options.representatives)?;
    cluster_with(&mut grid, epsilon, options)
}

pub fn cluster(grid: &mut SparseGrid, epsilon: f64, policy: MergePolicy) -> Result<HcaOutcome> {
    cluster_with(grid, epsilon, &ClusterOptions::with_policy(policy))
}

pub fn cluster_with(grid: &mut SparseGrid, epsilon: f64, options: &ClusterOptions) -> Result<HcaOutcome> {
    if epsilon != grid.config().epsilon() {
        return Err(Error::ConfigMismatch {
            grid: grid.config().epsilon(),
            requested: epsilon,
        });
    }
    let candidates = Candidates::new(grid, options.strategy);
    let mut walker = Walker::new(grid.occupied_cells(), options.order);
    let mut merge_tests = 0;
    let mut next_id = 0u32;

    for cell in grid.cells_mut() {
        cell.reset_cluster();
    }
    for seed in 0..grid.occupied_cells() {
        if walker.component[seed].is_some() {
            continue;
        }
        next_id += 1;
        merge_tests += walker.grow(grid, &candidates, seed, next_id, options.policy);
    }

    let mut labels = vec![Label::Noise; grid.point_count()];
    for (id, cell) in walker.component.iter().zip(grid.cells_mut()) {
        let id = id.expect("every cell is reached from some seed");
        cell.assign_cluster(id);
        for &m in cell.members() {
            labels[m] = Label::Cluster(id);
        }
    }
    let mut labeling = ClusterLabeling::from_contiguous(labels, next_id as usize);
    if let Some(min) = options.min_cluster_size {
        labeling = labeling.filter_small_clusters(min);
    }
    Ok(HcaOutcome {
        labeling,
        stats: HcaStats {
            occupied_cells: grid.occupied_cells(),
            merge_tests,
        },
    })
}

/// The full component of `seed` in the cell graph, in visit order.
pub fn traverse(
    grid: &mut SparseGrid,
    seed: &CellKey,
    policy: MergePolicy,
    order: TraversalOrder,
) -> Option<Vec<CellKey>> {
    let seed = grid.cell_id(seed)?;
    let candidates = Candidates::new(grid, NeighborStrategy::Auto);
    let mut walker = Walker::new(grid.occupied_cells(), order);
    walker.record_visits = true;
    walker.grow(grid, &candidates, seed, 1, policy);
    Some(walker.visits.iter().map(|&c| grid.cells()[c].key().clone()).collect())
}

/// Evaluates the merge condition between occupied cells `a` and `b`
/// (indices into [`SparseGrid::cells`]).
pub fn merge_condition(grid: &mut SparseGrid, a: usize, b: usize, policy: MergePolicy) -> bool {
    let epsilon = grid.config().epsilon();
    match policy {
        MergePolicy::Representative => {
            let delta = grid.cells()[a].key().delta_to(grid.cells()[b].key());
            let (out, back) = paired_direction(&NeighborOffset::new(delta));
            let ra = grid.representative(a, &out);
            let rb = grid.representative(b, &back);
            Comparator::Lt.within(grid.original_coords(ra), grid.original_coords(rb), epsilon)
        }
        MergePolicy::Exact => exact_merge(grid, a, b),
    }
}

fn exact_merge(grid: &SparseGrid, a: usize, b: usize) -> bool {
    let epsilon = grid.config().epsilon();
    // Box-distance filter in the shifted frame; the slack keeps it
    // conservative against rounding differences with the original frame.
    let cutoff = epsilon * (1.0 + 1e-9);
    let near = |from: usize, to: usize| -> Vec<usize> {
        let side = grid.config().side();
        let key = grid.cells()[to].key().coords();
        grid.cells()[from]
            .members()
            .iter()
            .copied()
            .filter(|&m| {
                let gap_sq: f64 = grid
                    .shifted_coords(m)
                    .iter()
                    .zip(key)
                    .map(|(&c, &k)| {
                        let lo = k as f64 * side;
                        let hi = lo + side;
                        let g = (lo - c).max(c - hi).max(0.0);
                        g * g
                    })
                    .sum();
                gap_sq.sqrt() < cutoff
            })
            .collect()
    };
    let left = near(a, b);
    if left.is_empty() {
        return false;
    }
    let right = near(b, a);
    left.iter().any(|&p| {
        right
            .iter()
            .any(|&q| Comparator::Lt.within(grid.original_coords(p), grid.original_coords(q), epsilon))
    })
}

enum Candidates {
    /// Offsets ordered by layer, then lexicographically.
    Offsets(Vec<Vec<i64>>),
    Scan { reach: i64 },
}

impl Candidates {
    fn new(grid: &SparseGrid, strategy: NeighborStrategy) -> Self {
        let d = grid.dim();
        let use_offsets = match strategy {
            NeighborStrategy::Offsets => true,
            NeighborStrategy::Scan => false,
            NeighborStrategy::Auto => neighbor_offset_count(d) <= grid.occupied_cells().max(32) as u128,
        };
        if use_offsets {
            let mut offsets = neighbor_offsets(d);
            offsets.sort_by(|x, y| x.layer().cmp(&y.layer()).then_with(|| x.cmp(y)));
            Candidates::Offsets(offsets.into_iter().map(NeighborOffset::into_delta).collect())
        } else {
            Candidates::Scan { reach: max_layer(d) }
        }
    }

    fn collect(&self, grid: &SparseGrid, cell: usize, out: &mut Vec<usize>, probe: &mut Vec<i64>) {
        out.clear();
        let key = grid.cells()[cell].key().coords();
        match self {
            Candidates::Offsets(offsets) => {
                for delta in offsets {
                    probe.clear();
                    probe.extend(key.iter().zip(delta).map(|(k, d)| k + d));
                    if let Some(id) = grid.cell_id_at(probe) {
                        out.push(id);
                    }
                }
            }
            Candidates::Scan { reach } => {
                let cells = grid.cells();
                let lo = cells.partition_point(|c| c.key().coords()[0] < key[0] - reach);
                let hi = cells.partition_point(|c| c.key().coords()[0] <= key[0] + reach);
                for (id, other) in cells[lo..hi].iter().enumerate() {
                    let id = lo + id;
                    if id == cell {
                        continue;
                    }
                    probe.clear();
                    probe.extend(other.key().coords().iter().zip(key).map(|(b, a)| b - a));
                    if passes_pruning(probe) {
                        out.push(id);
                    }
                }
            }
        }
    }
}

struct Walker {
    component: Vec<Option<u32>>,
    order: TraversalOrder,
    work: VecDeque<usize>,
    record_visits: bool,
    visits: Vec<usize>,
}

impl Walker {
    fn new(cells: usize, order: TraversalOrder) -> Self {
        Walker {
            component: vec![None; cells],
            order,
            work: VecDeque::new(),
            record_visits: false,
            visits: Vec::new(),
        }
    }

    /// Labels the component of `seed` with `id`; returns merge tests spent.
    fn grow(
        &mut self,
        grid: &mut SparseGrid,
        candidates: &Candidates,
        seed: usize,
        id: u32,
        policy: MergePolicy,
    ) -> u64 {
        let mut tests = 0;
        let mut neighbors = Vec::new();
        let mut probe = Vec::with_capacity(grid.dim());
        self.component[seed] = Some(id);
        self.work.push_back(seed);
        while let Some(cell) = match self.order {
            TraversalOrder::DepthFirst => self.work.pop_back(),
            TraversalOrder::BreadthFirst => self.work.pop_front(),
        } {
            if self.record_visits {
                self.visits.push(cell);
            }
            candidates.collect(grid, cell, &mut neighbors, &mut probe);
            for &other in &neighbors {
                // earlier components are closed, so an assigned neighbor is never a missed edge
                if self.component[other].is_some() {
                    continue;
                }
                tests += 1;
                if merge_condition(grid, cell, other, policy) {
                    self.component[other] = Some(id);
                    self.work.push_back(other);
                }
            }
        }
        tests
    }
}
