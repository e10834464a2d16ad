//! Deterministic synthetic datasets.
//!
//! The random stream is ChaCha8 seeded with `seed_from_u64(seed)`. Uniform
//! variates take the top 53 bits of each `u64` draw; normal variates use the
//! Box-Muller cosine branch. Transcendentals go through `libm`, so the same
//! `GeneratorSpec` yields bit-identical coordinates on every platform.

use std::collections::HashSet;
use std::f64::consts::PI;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorKind {
    /// Isotropic Gaussian blobs centered on distinct lattice sites spaced
    /// `separation * sigma` apart.
    Blobs {
        clusters: usize,
        sigma: f64,
        separation: f64,
    },
    /// Concentric annuli in the plane, uniform in angle and in radius across
    /// `thickness`.
    Rings { radii: Vec<f64>, thickness: f64 },
    /// I.i.d. uniform in `[0, extent)^d`.
    Uniform { extent: f64 },
}

impl GeneratorKind {
    pub const MIN_BLOB_SEPARATION: f64 = 6.0;

    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::Blobs { .. } => "blobs",
            GeneratorKind::Rings { .. } => "rings",
            GeneratorKind::Uniform { .. } => "uniform",
        }
    }

    pub fn blobs(clusters: usize, sigma: f64) -> Self {
        GeneratorKind::Blobs {
            clusters,
            sigma,
            separation: 20.0,
        }
    }

    pub fn rings() -> Self {
        GeneratorKind::Rings {
            radii: vec![1.0, 3.0],
            thickness: 0.2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub dim: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, dim: usize, seed: u64) -> Self {
        GeneratorSpec { kind, n, dim, seed }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if self.dim == 0 {
            return Err(Error::ZeroDimension);
        }
        match &self.kind {
            GeneratorKind::Blobs {
                clusters,
                sigma,
                separation,
            } => {
                if *clusters == 0 {
                    return bad("blob count must be positive".into());
                }
                if !(*sigma > 0.0 && sigma.is_finite()) {
                    return bad(format!("sigma must be positive, got {sigma}"));
                }
                if !(*separation >= GeneratorKind::MIN_BLOB_SEPARATION && separation.is_finite()) {
                    return bad(format!(
                        "blob separation must be at least {} sigma, got {separation}",
                        GeneratorKind::MIN_BLOB_SEPARATION
                    ));
                }
            }
            GeneratorKind::Rings { radii, thickness } => {
                if self.dim != 2 {
                    return Err(Error::UnsupportedDimension {
                        kind: "rings",
                        dim: self.dim,
                    });
                }
                if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
                    return bad("ring radii must be positive".into());
                }
                if !(*thickness >= 0.0 && thickness.is_finite()) {
                    return bad(format!("ring thickness must be non-negative, got {thickness}"));
                }
            }
            GeneratorKind::Uniform { extent } => {
                if !(*extent > 0.0 && extent.is_finite()) {
                    return bad(format!("extent must be positive, got {extent}"));
                }
            }
        }
        Ok(())
    }
}

struct Stream(ChaCha8Rng);

impl Stream {
    fn new(seed: u64) -> Self {
        Stream(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in [0, 1).
    fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn below(&mut self, bound: u64) -> u64 {
        // rejection keeps the draw unbiased
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.0.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * PI * u2)
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = Stream::new(spec.seed);
    let (n, dim) = (spec.n, spec.dim);
    let mut coords = Vec::with_capacity(n * dim);

    match &spec.kind {
        GeneratorKind::Blobs {
            clusters,
            sigma,
            separation,
        } => {
            let centers = blob_centers(&mut rng, *clusters, dim, separation * sigma);
            for i in 0..n {
                let center = &centers[i % clusters];
                coords.extend(center.iter().map(|c| c + sigma * rng.normal()));
            }
        }
        GeneratorKind::Rings { radii, thickness } => {
            for i in 0..n {
                let radius = radii[i % radii.len()] + (rng.uniform() - 0.5) * thickness;
                let angle = 2.0 * PI * rng.uniform();
                coords.push(radius * libm::cos(angle));
                coords.push(radius * libm::sin(angle));
            }
        }
        GeneratorKind::Uniform { extent } => {
            coords.extend((0..n * dim).map(|_| rng.uniform() * extent));
        }
    }
    Dataset::new(dim, coords)
}

/// `clusters` distinct sites of the smallest cubic lattice that has enough
/// of them, scaled by `spacing`.
fn blob_centers(rng: &mut Stream, clusters: usize, dim: usize, spacing: f64) -> Vec<Vec<f64>> {
    let mut per_axis = 1u64;
    while !lattice_holds(per_axis, dim, clusters) {
        per_axis += 1;
    }
    let mut seen = HashSet::new();
    let mut centers = Vec::with_capacity(clusters);
    while centers.len() < clusters {
        let site: Vec<u64> = (0..dim).map(|_| rng.below(per_axis)).collect();
        if seen.insert(site.clone()) {
            centers.push(site.iter().map(|&s| s as f64 * spacing).collect());
        }
    }
    centers
}

fn lattice_holds(per_axis: u64, dim: usize, clusters: usize) -> bool {
    let mut sites = 1u128;
    for _ in 0..dim {
        sites = sites.saturating_mul(per_axis as u128);
        if sites >= clusters as u128 {
            return true;
        }
    }
    sites >= clusters as u128
}
