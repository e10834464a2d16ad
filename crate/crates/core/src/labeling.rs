use std::collections::HashMap;

use serde::{Deserialize, Serialize};

/// Cluster assignment of one point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Noise,
    Cluster(u32),
}

impl Label {
    /// `-1` for noise, the cluster id otherwise.
    pub fn as_i64(self) -> i64 {
        match self {
            Label::Noise => -1,
            Label::Cluster(id) => id as i64,
        }
    }

    pub fn is_noise(self) -> bool {
        self == Label::Noise
    }
}

/// Per-point labels with cluster ids numbered contiguously from 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClusterLabeling {
    labels: Vec<Label>,
    cluster_count: usize,
}

impl ClusterLabeling {
    /// Renumbers clusters by first appearance so ids are `1..=k`.
    pub fn from_labels(labels: Vec<Label>) -> Self {
        let mut renumber: HashMap<u32, u32> = HashMap::new();
        let labels: Vec<Label> = labels
            .into_iter()
            .map(|l| match l {
                Label::Noise => Label::Noise,
                Label::Cluster(id) => {
                    let next = renumber.len() as u32 + 1;
                    Label::Cluster(*renumber.entry(id).or_insert(next))
                }
            })
            .collect();
        ClusterLabeling {
            cluster_count: renumber.len(),
            labels,
        }
    }

    /// Trusts the caller that ids are already contiguous.
    pub(crate) fn from_contiguous(labels: Vec<Label>, cluster_count: usize) -> Self {
        debug_assert!(labels.iter().all(|l| match l {
            Label::Noise => true,
            Label::Cluster(id) => (1..=cluster_count as u32).contains(id),
        }));
        ClusterLabeling {
            labels,
            cluster_count,
        }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn cluster_count(&self) -> usize {
        self.cluster_count
    }

    pub fn noise_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_noise()).count()
    }

    /// `sizes[id - 1]` is the size of cluster `id`.
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.cluster_count];
        for l in &self.labels {
            if let Label::Cluster(id) = l {
                sizes[*id as usize - 1] += 1;
            }
        }
        sizes
    }

    /// Block id per point with every noise point in its own singleton block.
    pub fn blocks(&self) -> Vec<usize> {
        let mut next = self.cluster_count;
        self.labels
            .iter()
            .map(|l| match l {
                Label::Cluster(id) => *id as usize - 1,
                Label::Noise => {
                    next += 1;
                    next - 1
                }
            })
            .collect()
    }

    /// Relabels clusters with fewer than `min_size` points as noise and
    /// renumbers the survivors in their original order.
    pub fn filter_small_clusters(&self, min_size: usize) -> ClusterLabeling {
        let sizes = self.cluster_sizes();
        let labels = self
            .labels
            .iter()
            .map(|&l| match l {
                Label::Cluster(id) if sizes[id as usize - 1] < min_size => Label::Noise,
                other => other,
            })
            .collect();
        ClusterLabeling::from_labels(labels)
    }

    /// True when both labelings induce the same partition (noise as singletons).
    pub fn same_partition(&self, other: &ClusterLabeling) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut forward: HashMap<usize, usize> = HashMap::new();
        let mut backward: HashMap<usize, usize> = HashMap::new();
        for (a, b) in self.blocks().into_iter().zip(other.blocks()) {
            if *forward.entry(a).or_insert(b) != b || *backward.entry(b).or_insert(a) != a {
                return false;
            }
        }
        true
    }
}
