//! Brute-force oracles shared by the integration and acceptance suites.
//! Nothing here reuses the library's clustering code paths.

#![allow(dead_code)]

use std::collections::VecDeque;

use hca_dbscan::metric::{distance, Comparator};
use hca_dbscan::{ClusterLabeling, Dataset, Label};
use rand::Rng;

pub fn within(a: &[f64], b: &[f64], eps: f64, cmp: Comparator) -> bool {
    let d = distance(a, b);
    match cmp {
        Comparator::Le => d <= eps,
        Comparator::Lt => d < eps,
    }
}

fn adjacency(data: &Dataset, eps: f64, cmp: Comparator) -> Vec<Vec<usize>> {
    let n = data.len();
    let mut adj = vec![Vec::new(); n];
    for (i, list) in adj.iter_mut().enumerate() {
        for j in 0..n {
            if i != j && within(data.row(i), data.row(j), eps, cmp) {
                list.push(j);
            }
        }
    }
    adj
}

/// Epsilon-connectivity components by breadth-first flood fill.
pub fn flood_components(data: &Dataset, eps: f64, cmp: Comparator) -> Vec<usize> {
    let adj = adjacency(data, eps, cmp);
    let mut comp = vec![usize::MAX; data.len()];
    let mut next = 0;
    for s in 0..data.len() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    comp
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Core,
    Border,
    Noise,
}

/// DBSCAN straight from the definitions: a point's neighborhood includes
/// itself, cores have at least `minpts` neighbors, clusters are
/// density-connected core sets plus their borders. Clusters are numbered by
/// their smallest core index; a border point joins the lowest-numbered
/// cluster among its core neighbors.
pub fn definitional_dbscan(data: &Dataset, eps: f64, minpts: usize, cmp: Comparator) -> (Vec<Role>, Vec<Label>) {
    let n = data.len();
    let adj = adjacency(data, eps, cmp);
    let core: Vec<bool> = adj.iter().map(|a| a.len() + 1 >= minpts).collect();

    let mut comp = vec![usize::MAX; n];
    let mut order = Vec::new();
    for s in 0..n {
        if !core[s] || comp[s] != usize::MAX {
            continue;
        }
        let id = order.len();
        order.push(s);
        comp[s] = id;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if core[v] && comp[v] == usize::MAX {
                    comp[v] = id;
                    queue.push_back(v);
                }
            }
        }
    }

    let mut roles = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for p in 0..n {
        if core[p] {
            roles.push(Role::Core);
            labels.push(Label::Cluster(comp[p] as u32 + 1));
        } else if let Some(c) = adj[p].iter().filter(|&&q| core[q]).map(|&q| comp[q]).min() {
            roles.push(Role::Border);
            labels.push(Label::Cluster(c as u32 + 1));
        } else {
            roles.push(Role::Noise);
            labels.push(Label::Noise);
        }
    }
    (roles, labels)
}

/// Rand index by enumerating every unordered pair.
pub fn pairwise_rand_index(a: &[Label], b: &[Label]) -> f64 {
    let n = a.len();
    if n < 2 {
        return 1.0;
    }
    let together = |l: &[Label], i: usize, j: usize| l[i] != Label::Noise && l[i] == l[j];
    let mut agree = 0u64;
    let mut total = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            total += 1;
            if together(a, i, j) == together(b, i, j) {
                agree += 1;
            }
        }
    }
    agree as f64 / total as f64
}

/// Partition equality through a bijection between block ids.
pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    use std::collections::HashMap;
    let mut f = HashMap::new();
    let mut g = HashMap::new();
    a.len() == b.len()
        && a.iter().zip(b).all(|(&x, &y)| *f.entry(x).or_insert(y) == y && *g.entry(y).or_insert(x) == x)
}

pub fn blocks(l: &ClusterLabeling) -> Vec<usize> {
    l.blocks()
}

/// Uniform points in a box whose side is chosen so that `eps` sits near the
/// typical nearest-neighbor spacing, which keeps component structure
/// non-trivial.
pub fn random_case<R: Rng>(rng: &mut R, max_n: usize, dims: std::ops::RangeInclusive<usize>) -> (Dataset, f64) {
    let n = rng.random_range(1..=max_n);
    let d = rng.random_range(dims);
    let extent = rng.random_range(0.5..20.0);
    let spacing = extent / (n as f64).powf(1.0 / d as f64);
    let eps = spacing * rng.random_range(0.3..2.5);
    let shift: Vec<f64> = (0..d).map(|_| rng.random_range(-50.0..50.0)).collect();
    let coords = (0..n * d).map(|i| shift[i % d] + rng.random::<f64>() * extent).collect();
    (Dataset::new(d, coords).unwrap(), eps)
}
