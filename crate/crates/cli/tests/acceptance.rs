//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any criterion fails.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use hca_cli::timing::{median, time_runs};
use hca_dbscan::io::{read_csv, write_dataset, CsvSchema};
use hca_dbscan::offsets::{neighbor_offset_count, pruned_corner_count};
use hca_dbscan::oracle::epsilon_neighborhood;
use hca_dbscan::{
    build_grid, connectivity_components, dbscan, generate, hca_dbscan, neighbor_offsets, rand_index, refinement_check,
    Comparator, Dataset, DbscanParams, GeneratorKind, GeneratorSpec, Label, MergePolicy,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::{definitional_dbscan, random_case, Role};

const OFFSET_BUDGET_S: f64 = 1.0;
const EQUIVALENCE_BUDGET_S: f64 = 60.0;
const RANDOM_SUITE: usize = 200;
const RANDOM_MAX_N: usize = 2000;
const DBSCAN_SUITE: usize = 100;
const DBSCAN_MAX_N: usize = 500;
const HCA_GROWTH_MAX: f64 = 8.0;
const NAIVE_GROWTH_MIN: f64 = 10.0;
const SCALING_DENSITY: f64 = 20.0;
const SCALING_REPEAT: usize = 5;
const SPEEDUP_RATIO_MAX: f64 = 0.5;
const MERGE_TEST_FRACTION_MAX: f64 = 0.01;
const BLOB_N: usize = 50_000;
const BLOB_SIGMA: f64 = 1.0;
const BLOB_EPS: f64 = 3.0;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn random_suite() -> Vec<(Dataset, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..RANDOM_SUITE).map(|_| random_case(&mut rng, RANDOM_MAX_N, 1..=5)).collect()
}

fn generated(kind: GeneratorKind, n: usize, dim: usize, seed: u64) -> Dataset {
    generate(&GeneratorSpec::new(kind, n, dim, seed)).expect("generator spec is valid")
}

/// Named generator datasets with the epsilon each is clustered at.
fn generator_suites() -> Vec<(String, Dataset, f64)> {
    let mut suites = Vec::new();
    for (seed, dim) in [(1, 2), (2, 2), (3, 3), (4, 4)] {
        let data = generated(GeneratorKind::blobs(3 + seed as usize % 3, BLOB_SIGMA), 3000, dim, seed);
        suites.push((format!("blobs d={dim} seed={seed}"), data, BLOB_EPS * BLOB_SIGMA));
    }
    for seed in [5, 6] {
        suites.push((format!("rings seed={seed}"), generated(GeneratorKind::rings(), 2000, 2, seed), 0.5));
    }
    for (seed, dim) in [(7, 2), (8, 3)] {
        let extent = (2000.0 / SCALING_DENSITY).powf(1.0 / dim as f64);
        let data = generated(GeneratorKind::Uniform { extent }, 2000, dim, seed);
        suites.push((format!("uniform d={dim} seed={seed}"), data, 0.6));
    }
    suites
}

fn offsets_count() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut pass = true;
    for (d, expected) in [(2usize, 20usize), (3, 116), (4, 608)] {
        let got = neighbor_offsets(d).len();
        let layer = (d as f64).sqrt().ceil() as u128;
        let formula = (2 * layer + 1).pow(d as u32) - (pruned_corner_count(d) + 1);
        pass &= got == expected && formula == expected as u128 && neighbor_offset_count(d) == expected as u128;
        lines.push(format!("d={d}: {got} (formula {formula})"));
    }
    let elapsed = start.elapsed().as_secs_f64();
    pass &= elapsed < OFFSET_BUDGET_S;
    outcome(pass, format!("{}, {elapsed:.3}s", lines.join(", ")))
}

fn same_cell(suite: &[(Dataset, f64)]) -> Outcome {
    let mut pairs = 0u64;
    let mut violations = 0u64;
    for (data, eps) in suite {
        let grid = build_grid(data, *eps).expect("grid builds");
        for cell in grid.cells() {
            let members = cell.members();
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    pairs += 1;
                    if !Comparator::Lt.within(grid.original_coords(a), grid.original_coords(b), *eps) {
                        violations += 1;
                    }
                }
            }
        }
    }
    outcome(violations == 0, format!("{} datasets, {pairs} within-cell pairs, {violations} violations", suite.len()))
}

fn exact_equivalence(suite: &[(Dataset, f64)], generators: &[(String, Dataset, f64)]) -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let cases = suite.iter().enumerate().map(|(i, (d, e))| (format!("random #{i}"), d, *e));
    let named = generators.iter().map(|(name, d, e)| (name.clone(), d, *e));
    let mut total = 0;
    for (name, data, eps) in cases.chain(named) {
        total += 1;
        let hca = hca_dbscan(data, eps, MergePolicy::Exact).expect("clusters");
        let oracle = connectivity_components(data, eps, Comparator::Lt);
        let ri = rand_index(&hca.labeling, &oracle).expect("same length");
        if ri != 1.0 || !hca.labeling.same_partition(&oracle) {
            mismatches.push(name);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass = mismatches.is_empty() && elapsed < EQUIVALENCE_BUDGET_S;
    outcome(pass, format!("{total} datasets, {} mismatches {mismatches:?}, {elapsed:.1}s", mismatches.len()))
}

fn refinement(suite: &[(Dataset, f64)], generators: &[(String, Dataset, f64)]) -> Outcome {
    let mut violations = 0;
    let mut random_ri = Vec::new();
    for (data, eps) in suite {
        let hca = hca_dbscan(data, *eps, MergePolicy::Representative).expect("clusters");
        let oracle = connectivity_components(data, *eps, Comparator::Lt);
        if !refinement_check(&hca.labeling, &oracle).expect("same length") {
            violations += 1;
        }
        random_ri.push(rand_index(&hca.labeling, &oracle).expect("same length"));
    }
    let mut blob_ri = Vec::new();
    for (name, data, eps) in generators {
        let hca = hca_dbscan(data, *eps, MergePolicy::Representative).expect("clusters");
        let oracle = connectivity_components(data, *eps, Comparator::Lt);
        if !refinement_check(&hca.labeling, &oracle).expect("same length") {
            violations += 1;
        }
        let ri = rand_index(&hca.labeling, &oracle).expect("same length");
        println!("      {name}: rand index {ri}");
        if name.starts_with("blobs") {
            blob_ri.push(ri);
        }
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let min = random_ri.iter().copied().fold(1.0, f64::min);
    let exact = random_ri.iter().filter(|&&r| r == 1.0).count();
    let blob_mean = mean(&blob_ri);
    outcome(
        violations == 0 && blob_mean == 1.0,
        format!(
            "{violations} refinement violations; blob mean rand index {blob_mean}; random suite mean {:.6}, min {min:.6}, {exact}/{} exact",
            mean(&random_ri),
            random_ri.len()
        ),
    )
}

fn roles_of(data: &Dataset, eps: f64, minpts: usize, labels: &[Label]) -> Vec<Role> {
    let params = DbscanParams::new(eps, minpts);
    (0..data.len())
        .map(|i| {
            if epsilon_neighborhood(data, i, &params).len() >= minpts {
                Role::Core
            } else if labels[i].is_noise() {
                Role::Noise
            } else {
                Role::Border
            }
        })
        .collect()
}

fn dbscan_definitions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xdb5c);
    let mut runs = 0;
    let mut mismatches = 0;
    for _ in 0..DBSCAN_SUITE {
        let (data, eps) = random_case(&mut rng, DBSCAN_MAX_N, 1..=5);
        for minpts in [1, 3, 5] {
            runs += 1;
            let got = dbscan(&data, &DbscanParams::new(eps, minpts)).expect("valid params");
            let (roles, labels) = definitional_dbscan(&data, eps, minpts, Comparator::Le);
            if got.labels() != &labels[..] || roles_of(&data, eps, minpts, got.labels()) != roles {
                mismatches += 1;
            }
        }
    }
    outcome(mismatches == 0, format!("{runs} runs, {mismatches} mismatches"))
}

fn median_ms<T>(f: impl FnMut() -> T) -> f64 {
    median(&time_runs(SCALING_REPEAT, f).0)
}

fn uniform_at_density(n: usize, seed: u64) -> Dataset {
    let extent = (n as f64 / SCALING_DENSITY).sqrt();
    generated(GeneratorKind::Uniform { extent }, n, 2, seed)
}

fn scaling() -> Outcome {
    let eps = 1.0;
    let hca_ms = |n: usize| {
        let data = uniform_at_density(n, n as u64);
        median_ms(|| hca_dbscan(&data, eps, MergePolicy::Representative).expect("clusters"))
    };
    let naive_ms = |n: usize| {
        let data = uniform_at_density(n, n as u64);
        median_ms(|| dbscan(&data, &DbscanParams::new(eps, 1)).expect("valid params"))
    };
    let per_cell = {
        let data = uniform_at_density(25_000, 1);
        25_000.0 / build_grid(&data, eps).expect("grid builds").occupied_cells() as f64
    };
    let (h1, h4) = (hca_ms(25_000), hca_ms(100_000));
    let (n1, n4) = (naive_ms(5_000), naive_ms(20_000));
    let (hr, nr) = (h4 / h1, n4 / n1);
    outcome(
        hr < HCA_GROWTH_MAX && nr > NAIVE_GROWTH_MIN,
        format!(
            "{per_cell:.1} points/cell; hca {h1:.1}ms -> {h4:.1}ms (x{hr:.2} < {HCA_GROWTH_MAX}); naive {n1:.1}ms -> {n4:.1}ms (x{nr:.2} > {NAIVE_GROWTH_MIN})"
        ),
    )
}

fn blob_benchmark() -> Dataset {
    generated(GeneratorKind::blobs(3, BLOB_SIGMA), BLOB_N, 2, 50)
}

fn speedup(data: &Dataset) -> Outcome {
    let eps = BLOB_EPS * BLOB_SIGMA;
    let (hca_samples, _) = time_runs(3, || hca_dbscan(data, eps, MergePolicy::Representative).expect("clusters"));
    let (naive_samples, _) = time_runs(1, || dbscan(data, &DbscanParams::new(eps, 1)).expect("valid params"));
    let (h, b) = (median(&hca_samples), median(&naive_samples));
    let ratio = h / b;
    outcome(ratio < SPEEDUP_RATIO_MAX, format!("hca {h:.1}ms vs naive {b:.1}ms, ratio {ratio:.4} < {SPEEDUP_RATIO_MAX}"))
}

fn merge_tests(data: &Dataset) -> Outcome {
    let eps = BLOB_EPS * BLOB_SIGMA;
    let first = hca_dbscan(data, eps, MergePolicy::Representative).expect("clusters");
    let second = hca_dbscan(data, eps, MergePolicy::Representative).expect("clusters");
    let n = data.len() as f64;
    let fraction = first.stats.merge_tests as f64 / (n * n);
    let deterministic = first.stats.merge_tests == second.stats.merge_tests;
    outcome(
        fraction < MERGE_TEST_FRACTION_MAX && deterministic,
        format!(
            "{} merge tests over {} cells, {:.2e} of n^2 (< {MERGE_TEST_FRACTION_MAX}), repeatable: {deterministic}",
            first.stats.merge_tests, first.stats.occupied_cells, fraction
        ),
    )
}

fn hca(args: &[&str]) -> bool {
    Command::new(env!("CARGO_BIN_EXE_hca")).args(args).status().map(|s| s.success()).unwrap_or(false)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = |name: &str| dir.path().join(name);
    let s = |p: &Path| p.to_str().expect("utf-8 path").to_owned();
    let (a, b, la, lb) = (path("a.csv"), path("b.csv"), path("la.csv"), path("lb.csv"));

    let mut ok = true;
    for out in [&a, &b] {
        ok &= hca(&["generate", "--kind", "blobs", "--n", "5000", "--dims", "3", "--seed", "11", "--output", &s(out)]);
    }
    let generated_same = ok && std::fs::read(&a).ok() == std::fs::read(&b).ok();

    for out in [&la, &lb] {
        ok &= hca(&["cluster", "--input", &s(&a), "--epsilon", "2", "--algorithm", "hca", "--output", &s(out)]);
    }
    let labels_same = ok && std::fs::read(&la).ok() == std::fs::read(&lb).ok();

    let mut rng = ChaCha8Rng::seed_from_u64(0xc5f);
    let mut round_trip = true;
    for _ in 0..20 {
        let (data, _) = random_case(&mut rng, 500, 1..=5);
        let mut buf = Vec::new();
        write_dataset(&data, &mut buf).expect("in-memory write");
        let back = read_csv(&buf[..], &CsvSchema::default()).expect("reads back");
        round_trip &= back.dim() == data.dim()
            && back.as_flat().iter().zip(data.as_flat()).all(|(x, y)| x.to_bits() == y.to_bits())
            && back.len() == data.len();
    }
    outcome(
        ok && generated_same && labels_same && round_trip,
        format!("generator files identical: {generated_same}; label files identical: {labels_same}; csv round trip exact: {round_trip}"),
    )
}

fn main() {
    let suite = random_suite();
    let generators = generator_suites();
    let blobs = blob_benchmark();

    let criteria: Vec<Criterion> = vec![
        ("1 neighbor offset counts", Box::new(offsets_count)),
        ("2 same-cell distance guarantee", Box::new(|| same_cell(&suite))),
        ("3 exact policy equals components", Box::new(|| exact_equivalence(&suite, &generators))),
        ("4 representative policy refines components", Box::new(|| refinement(&suite, &generators))),
        ("5 dbscan matches definitions", Box::new(dbscan_definitions)),
        ("6 scaling on uniform 2-D data", Box::new(scaling)),
        ("7 speedup over naive dbscan", Box::new(|| speedup(&blobs))),
        ("8 merge tests below 1% of n^2", Box::new(|| merge_tests(&blobs))),
        ("9 determinism and round trips", Box::new(determinism)),
    ];

    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let result = check();
        let tag = if result.pass { "PASS" } else { "FAIL" };
        println!("{tag} [{name}] {} ({:.1}s)", result.detail, start.elapsed().as_secs_f64());
        failed += usize::from(!result.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
