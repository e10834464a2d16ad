use serde::{Deserialize, Serialize};

#[inline]
pub fn distance_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    distance_sq(a, b).sqrt()
}

/// How a pairwise distance is compared against epsilon.
///
/// The accelerated path always uses [`Comparator::Lt`]; classic DBSCAN
/// neighborhoods use [`Comparator::Le`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparator {
    Le,
    Lt,
}

impl Comparator {
    #[inline]
    pub fn accepts(self, dist: f64, epsilon: f64) -> bool {
        match self {
            Comparator::Le => dist <= epsilon,
            Comparator::Lt => dist < epsilon,
        }
    }

    /// True if the two coordinate slices are within `epsilon` under this comparator.
    #[inline]
    pub fn within(self, a: &[f64], b: &[f64], epsilon: f64) -> bool {
        self.accepts(distance(a, b), epsilon)
    }
}

impl std::str::FromStr for Comparator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "le" | "<=" => Ok(Comparator::Le),
            "lt" | "<" => Ok(Comparator::Lt),
            other => Err(format!("unknown comparator {other:?} (expected le or lt)")),
        }
    }
}
