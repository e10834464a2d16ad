//! Naive reference clusterings and partition agreement metrics.
//!
//! Everything here scans all point pairs on purpose: these routines are the
//! ground truth the grid-accelerated path is checked against.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::labeling::{ClusterLabeling, Label};
use crate::metric::Comparator;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DbscanParams {
    pub epsilon: f64,
    pub minpts: usize,
    pub comparator: Comparator,
}

impl DbscanParams {
    pub fn new(epsilon: f64, minpts: usize) -> Self {
        DbscanParams {
            epsilon,
            minpts,
            comparator: Comparator::Le,
        }
    }

    pub fn with_comparator(mut self, comparator: Comparator) -> Self {
        self.comparator = comparator;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidEpsilon(self.epsilon));
        }
        if self.minpts == 0 {
            return Err(Error::InvalidParameter("minpts must be at least 1".into()));
        }
        Ok(())
    }
}

fn index_ordered(dataset: &Dataset) -> std::borrow::Cow<'_, Dataset> {
    if dataset.indices().iter().enumerate().all(|(i, &id)| i == id) {
        std::borrow::Cow::Borrowed(dataset)
    } else {
        std::borrow::Cow::Owned(dataset.in_index_order())
    }
}

fn scan_neighborhood(data: &Dataset, row: usize, epsilon: f64, cmp: Comparator, out: &mut Vec<usize>) {
    out.clear();
    let p = data.row(row);
    out.extend(
        data.points()
            .enumerate()
            .filter(|(_, q)| cmp.within(p, q.coords, epsilon))
            .map(|(r, _)| r),
    );
}

/// Stable indices of every point within epsilon of point `index`, itself included.
pub fn epsilon_neighborhood(dataset: &Dataset, index: usize, params: &DbscanParams) -> Vec<usize> {
    let data = index_ordered(dataset);
    let mut out = Vec::new();
    scan_neighborhood(&data, index, params.epsilon, params.comparator, &mut out);
    out
}

/// Classic DBSCAN with naive region queries, visiting points in index order.
///
/// A border point reachable from several clusters joins the first one
/// discovered.
pub fn dbscan(dataset: &Dataset, params: &DbscanParams) -> Result<ClusterLabeling> {
    params.validate()?;
    let data = index_ordered(dataset);
    let n = data.len();

    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Unvisited,
        Noise,
        Member(u32),
    }

    let mut state = vec![State::Unvisited; n];
    let mut queued = vec![false; n];
    let mut queue = VecDeque::new();
    let mut region = Vec::new();
    let mut id = 0u32;

    for p in 0..n {
        if state[p] != State::Unvisited {
            continue;
        }
        scan_neighborhood(&data, p, params.epsilon, params.comparator, &mut region);
        if region.len() < params.minpts {
            state[p] = State::Noise;
            continue;
        }
        id += 1;
        state[p] = State::Member(id);
        queued[p] = true;
        for &q in &region {
            if !queued[q] {
                queued[q] = true;
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            match state[q] {
                State::Member(_) => continue,
                State::Noise => {
                    // already known not to be core
                    state[q] = State::Member(id);
                    continue;
                }
                State::Unvisited => state[q] = State::Member(id),
            }
            scan_neighborhood(&data, q, params.epsilon, params.comparator, &mut region);
            if region.len() >= params.minpts {
                for &r in &region {
                    if !queued[r] {
                        queued[r] = true;
                        queue.push_back(r);
                    }
                }
            }
        }
    }

    let labels = state
        .into_iter()
        .map(|s| match s {
            State::Member(c) => Label::Cluster(c),
            _ => Label::Noise,
        })
        .collect();
    Ok(ClusterLabeling::from_contiguous(labels, id as usize))
}

pub(crate) struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Connected components of the graph joining every pair within epsilon.
/// Ids follow the first point of each component; no point is noise.
pub fn connectivity_components(dataset: &Dataset, epsilon: f64, comparator: Comparator) -> ClusterLabeling {
    let data = index_ordered(dataset);
    let n = data.len();
    let mut sets = DisjointSet::new(n);
    for i in 0..n {
        let p = data.row(i);
        for j in i + 1..n {
            if comparator.within(p, data.row(j), epsilon) {
                sets.union(i, j);
            }
        }
    }
    let labels = (0..n).map(|i| Label::Cluster(sets.find(i) as u32)).collect();
    ClusterLabeling::from_labels(labels)
}

fn check_lengths(a: &ClusterLabeling, b: &ClusterLabeling) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LabelingMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

fn pairs(n: u64) -> u128 {
    n as u128 * n.saturating_sub(1) as u128 / 2
}

/// Number of unordered point pairs on which the two partitions disagree
/// (noise counts as singletons), and the total number of pairs.
fn disagreements(a: &ClusterLabeling, b: &ClusterLabeling) -> (u128, u128) {
    let (ba, bb) = (a.blocks(), b.blocks());
    let mut joint: HashMap<(usize, usize), u64> = HashMap::new();
    let mut left: HashMap<usize, u64> = HashMap::new();
    let mut right: HashMap<usize, u64> = HashMap::new();
    for (&x, &y) in ba.iter().zip(&bb) {
        *joint.entry((x, y)).or_default() += 1;
        *left.entry(x).or_default() += 1;
        *right.entry(y).or_default() += 1;
    }
    let together_both: u128 = joint.values().map(|&c| pairs(c)).sum();
    let together_a: u128 = left.values().map(|&c| pairs(c)).sum();
    let together_b: u128 = right.values().map(|&c| pairs(c)).sum();
    // pairs together in exactly one of the partitions
    let mismatched = together_a + together_b - 2 * together_both;
    (mismatched, pairs(a.len() as u64))
}

/// Fraction of unordered point pairs on which the partitions agree.
/// Defined as 1.0 when there are fewer than two points.
pub fn rand_index(a: &ClusterLabeling, b: &ClusterLabeling) -> Result<f64> {
    check_lengths(a, b)?;
    let (mismatched, total) = disagreements(a, b);
    if total == 0 {
        return Ok(1.0);
    }
    Ok((total - mismatched) as f64 / total as f64)
}

/// True iff every block of `fine` lies inside a single block of `coarse`.
pub fn refinement_check(fine: &ClusterLabeling, coarse: &ClusterLabeling) -> Result<bool> {
    check_lengths(fine, coarse)?;
    let mut home: HashMap<usize, usize> = HashMap::new();
    Ok(fine
        .blocks()
        .into_iter()
        .zip(coarse.blocks())
        .all(|(f, c)| *home.entry(f).or_insert(c) == c))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub rand_index: f64,
    pub identical: bool,
    pub cluster_counts: (usize, usize),
    pub mismatched_pairs: u64,
}

impl AgreementReport {
    pub fn compare(a: &ClusterLabeling, b: &ClusterLabeling) -> Result<Self> {
        check_lengths(a, b)?;
        let (mismatched, total) = disagreements(a, b);
        let rand_index = if total == 0 {
            1.0
        } else {
            (total - mismatched) as f64 / total as f64
        };
        Ok(AgreementReport {
            rand_index,
            identical: mismatched == 0,
            cluster_counts: (a.cluster_count(), b.cluster_count()),
            mismatched_pairs: mismatched.min(u64::MAX as u128) as u64,
        })
    }
}
