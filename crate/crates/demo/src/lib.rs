//! Browser bindings: generate a 2-D dataset, cluster it at an interactive
//! epsilon, and inspect the grid the clustering runs on.

use hca_dbscan::{
    build_grid, connectivity_components, generate, hca_dbscan, neighbor_offsets, AgreementReport, Comparator, Dataset,
    GeneratorKind, GeneratorSpec, MergePolicy,
};
use wasm_bindgen::prelude::*;

/// Points the page can draw and re-cluster.
#[wasm_bindgen]
pub struct Scene {
    data: Dataset,
}

/// One clustering of a scene, flattened for the canvas.
#[wasm_bindgen]
pub struct ClusterView {
    labels: Vec<i32>,
    cells: Vec<f64>,
    side: f64,
    cluster_count: usize,
    occupied_cells: usize,
    merge_tests: u64,
    oracle_clusters: usize,
    rand_index: f64,
    millis: f64,
}

fn kind_named(kind: &str) -> Option<GeneratorKind> {
    match kind {
        "blobs" => Some(GeneratorKind::Blobs {
            clusters: 4,
            sigma: 0.4,
            separation: 8.0,
        }),
        "rings" => Some(GeneratorKind::rings()),
        "uniform" => Some(GeneratorKind::Uniform { extent: 6.0 }),
        _ => None,
    }
}

fn to_js(err: hca_dbscan::Error) -> JsError {
    JsError::new(&err.to_string())
}

fn now_ms() -> f64 {
    #[cfg(target_arch = "wasm32")]
    {
        js_sys_now()
    }
    #[cfg(not(target_arch = "wasm32"))]
    {
        0.0
    }
}

#[cfg(target_arch = "wasm32")]
#[wasm_bindgen]
extern "C" {
    #[wasm_bindgen(js_namespace = Date, js_name = now)]
    fn js_sys_now() -> f64;
}

impl Scene {
    pub fn try_generate(kind: &str, n: usize, seed: u64) -> hca_dbscan::Result<Scene> {
        let kind = kind_named(kind).ok_or_else(|| hca_dbscan::Error::InvalidParameter(format!("unknown kind {kind:?}")))?;
        let data = generate(&GeneratorSpec::new(kind, n, 2, seed))?;
        Ok(Scene { data })
    }

    pub fn try_cluster(&self, epsilon: f64, exact: bool) -> hca_dbscan::Result<ClusterView> {
        let policy = if exact { MergePolicy::Exact } else { MergePolicy::Representative };
        let start = now_ms();
        let out = hca_dbscan(&self.data, epsilon, policy)?;
        let millis = now_ms() - start;

        let grid = build_grid(&self.data, epsilon)?;
        let origin = grid.config().origin();
        let side = grid.config().side();
        let cells = grid
            .cells()
            .iter()
            .flat_map(|c| {
                let k = c.key().coords();
                [origin[0] + k[0] as f64 * side, origin[1] + k[1] as f64 * side]
            })
            .collect();

        let oracle = connectivity_components(&self.data, epsilon, Comparator::Lt);
        let agreement = AgreementReport::compare(&out.labeling, &oracle)?;
        Ok(ClusterView {
            labels: out.labeling.labels().iter().map(|l| l.as_i64() as i32).collect(),
            cells,
            side,
            cluster_count: out.labeling.cluster_count(),
            occupied_cells: out.stats.occupied_cells,
            merge_tests: out.stats.merge_tests,
            oracle_clusters: oracle.cluster_count(),
            rand_index: agreement.rand_index,
            millis,
        })
    }

    pub fn try_add_point(&mut self, x: f64, y: f64) -> hca_dbscan::Result<()> {
        let mut coords = self.data.as_flat().to_vec();
        coords.extend([x, y]);
        self.data = Dataset::new(2, coords)?;
        Ok(())
    }
}

#[wasm_bindgen]
impl Scene {
    #[wasm_bindgen(constructor)]
    pub fn new(kind: &str, n: usize, seed: u64) -> Result<Scene, JsError> {
        Scene::try_generate(kind, n, seed).map_err(to_js)
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Interleaved x, y coordinates in index order.
    pub fn points(&self) -> Vec<f64> {
        self.data.as_flat().to_vec()
    }

    #[wasm_bindgen(js_name = addPoint)]
    pub fn add_point(&mut self, x: f64, y: f64) -> Result<(), JsError> {
        self.try_add_point(x, y).map_err(to_js)
    }

    pub fn cluster(&self, epsilon: f64, exact: bool) -> Result<ClusterView, JsError> {
        self.try_cluster(epsilon, exact).map_err(to_js)
    }
}

#[wasm_bindgen]
impl ClusterView {
    /// Cluster id per point, -1 for noise.
    pub fn labels(&self) -> Vec<i32> {
        self.labels.clone()
    }

    /// Lower-left corners of the occupied cells, interleaved x, y.
    pub fn cells(&self) -> Vec<f64> {
        self.cells.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn side(&self) -> f64 {
        self.side
    }

    #[wasm_bindgen(getter, js_name = clusterCount)]
    pub fn cluster_count(&self) -> usize {
        self.cluster_count
    }

    #[wasm_bindgen(getter, js_name = occupiedCells)]
    pub fn occupied_cells(&self) -> usize {
        self.occupied_cells
    }

    #[wasm_bindgen(getter, js_name = mergeTests)]
    pub fn merge_tests(&self) -> f64 {
        self.merge_tests as f64
    }

    #[wasm_bindgen(getter, js_name = oracleClusters)]
    pub fn oracle_clusters(&self) -> usize {
        self.oracle_clusters
    }

    #[wasm_bindgen(getter, js_name = randIndex)]
    pub fn rand_index(&self) -> f64 {
        self.rand_index
    }

    #[wasm_bindgen(getter)]
    pub fn millis(&self) -> f64 {
        self.millis
    }
}

/// Cell offsets examined around every occupied cell in `d` dimensions,
/// flattened `d` integers per offset.
#[wasm_bindgen(js_name = neighborOffsets)]
pub fn neighbor_offsets_flat(d: usize) -> Vec<i32> {
    neighbor_offsets(d).iter().flat_map(|o| o.delta().iter().map(|&v| v as i32)).collect()
}
