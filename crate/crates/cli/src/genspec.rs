//! Compact generator descriptions for `bench --generator`.
//!
//! Syntax: `kind[:key=value,...]`, e.g. `uniform:dims=2,density=20,seed=1`
//! or `blobs:k=3,sigma=1,sep=20`. Ring radii are `/`-separated:
//! `rings:radii=1/3,thickness=0.2`. For `uniform`, `density` (points per
//! unit volume) overrides `extent` so the box grows with `n`.

use std::str::FromStr;

use hca_dbscan::{GeneratorKind, GeneratorSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorTemplate {
    kind: GeneratorKind,
    dims: usize,
    seed: u64,
    density: Option<f64>,
    text: String,
}

impl GeneratorTemplate {
    pub fn spec(&self, n: usize) -> GeneratorSpec {
        let kind = match (&self.kind, self.density) {
            (GeneratorKind::Uniform { .. }, Some(density)) => GeneratorKind::Uniform {
                extent: (n as f64 / density).powf(1.0 / self.dims as f64),
            },
            (kind, _) => kind.clone(),
        };
        GeneratorSpec::new(kind, n, self.dims, self.seed)
    }

    pub fn dims(&self) -> usize {
        self.dims
    }
}

impl std::fmt::Display for GeneratorTemplate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.text)
    }
}

fn number<T: FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("generator parameter {key}={value:?} is not a valid number"))
}

impl FromStr for GeneratorTemplate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind_name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut kind = match kind_name {
            "blobs" => GeneratorKind::blobs(3, 1.0),
            "rings" => GeneratorKind::rings(),
            "uniform" => GeneratorKind::Uniform { extent: 1.0 },
            other => return Err(format!("unknown generator kind {other:?} (expected blobs, rings or uniform)")),
        };
        let mut dims = 2;
        let mut seed = 0;
        let mut density = None;

        for pair in rest.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| format!("generator parameter {pair:?} must be key=value"))?;
            match (key, &mut kind) {
                ("dims" | "d", _) => dims = number(key, value)?,
                ("seed", _) => seed = number(key, value)?,
                ("k" | "clusters", GeneratorKind::Blobs { clusters, .. }) => *clusters = number(key, value)?,
                ("sigma", GeneratorKind::Blobs { sigma, .. }) => *sigma = number(key, value)?,
                ("sep" | "separation", GeneratorKind::Blobs { separation, .. }) => *separation = number(key, value)?,
                ("radii", GeneratorKind::Rings { radii, .. }) => {
                    *radii = value.split('/').map(|r| number(key, r)).collect::<Result<_, _>>()?
                }
                ("thickness", GeneratorKind::Rings { thickness, .. }) => *thickness = number(key, value)?,
                ("extent", GeneratorKind::Uniform { extent }) => *extent = number(key, value)?,
                ("density", GeneratorKind::Uniform { .. }) => {
                    let d: f64 = number(key, value)?;
                    if !(d > 0.0 && d.is_finite()) {
                        return Err("density must be positive".into());
                    }
                    density = Some(d)
                }
                _ => return Err(format!("unknown parameter {key:?} for generator {kind_name}")),
            }
        }
        Ok(GeneratorTemplate {
            kind,
            dims,
            seed,
            density,
            text: s.to_string(),
        })
    }
}
