use std::path::Path;

use hca_dbscan::hca::hca_dbscan_with;
use hca_dbscan::io::{load_csv, write_dataset_csv, write_labels, CsvSchema};
use hca_dbscan::{
    connectivity_components, dbscan, generate, refinement_check, AgreementReport, ClusterLabeling, ClusterOptions, Comparator,
    Dataset, DbscanParams, GeneratorKind, GeneratorSpec, MergePolicy,
};
use serde::Serialize;

use crate::args::{Algorithm, BenchArgs, Cli, ClusterArgs, Command, CompareArgs, GenerateArgs, InputArgs, KindArg};
use crate::error::CliError;
use crate::report::{BenchReport, BenchRun, BenchSize, ComparisonReport, Growth, RunReport};
use crate::timing::{median, ppi_percent, time_runs};

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Cluster(args) => cmd_cluster(&args),
        Command::Compare(args) => cmd_compare(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::Generate(args) => cmd_generate(&args),
    }
}

/// One clustering job, fully parameterized.
#[derive(Debug, Clone)]
pub struct Job {
    pub algorithm: Algorithm,
    pub epsilon: f64,
    pub policy: MergePolicy,
    pub minpts: usize,
    pub comparator: Comparator,
    pub min_cluster_size: Option<usize>,
}

impl Job {
    pub fn hca(epsilon: f64, policy: MergePolicy) -> Self {
        Job {
            algorithm: Algorithm::Hca,
            epsilon,
            policy,
            minpts: 1,
            comparator: Comparator::Lt,
            min_cluster_size: None,
        }
    }

    pub fn baseline(algorithm: Algorithm, epsilon: f64, minpts: usize, comparator: Comparator) -> Self {
        Job {
            algorithm,
            epsilon,
            policy: MergePolicy::Representative,
            minpts,
            comparator,
            min_cluster_size: None,
        }
    }

    /// Runs the job once; only the clustering itself is timed.
    pub fn run(&self, data: &Dataset) -> Result<(ClusterLabeling, RunReport), CliError> {
        let (samples, mut results) = time_runs(1, || self.execute(data));
        let (labeling, stats) = results.pop().expect("one run")?;
        let report = self.report(data, &labeling, stats, samples[0]);
        Ok((labeling, report))
    }

    fn execute(&self, data: &Dataset) -> Result<(ClusterLabeling, Option<hca_dbscan::HcaStats>), CliError> {
        let labeling = match self.algorithm {
            Algorithm::Hca => {
                let options = ClusterOptions {
                    policy: self.policy,
                    min_cluster_size: self.min_cluster_size,
                    ..Default::default()
                };
                let out = hca_dbscan_with(data, self.epsilon, &options)?;
                return Ok((out.labeling, Some(out.stats)));
            }
            Algorithm::Dbscan => {
                let params = DbscanParams::new(self.epsilon, self.minpts).with_comparator(self.comparator);
                dbscan(data, &params)?
            }
            Algorithm::Components => connectivity_components(data, self.epsilon, self.comparator),
        };
        let labeling = match self.min_cluster_size {
            Some(min) => labeling.filter_small_clusters(min),
            None => labeling,
        };
        Ok((labeling, None))
    }

    fn report(
        &self,
        data: &Dataset,
        labeling: &ClusterLabeling,
        stats: Option<hca_dbscan::HcaStats>,
        wall_time_ms: f64,
    ) -> RunReport {
        RunReport {
            algorithm: self.algorithm,
            policy: (self.algorithm == Algorithm::Hca).then_some(self.policy),
            epsilon: self.epsilon,
            minpts: (self.algorithm == Algorithm::Dbscan).then_some(self.minpts),
            n: data.len(),
            d: data.dim(),
            cluster_count: labeling.cluster_count(),
            noise_count: labeling.noise_count(),
            wall_time_ms,
            occupied_cells: stats.map(|s| s.occupied_cells),
            merge_tests: stats.map(|s| s.merge_tests),
        }
    }
}

fn load(input: &InputArgs) -> Result<Dataset, CliError> {
    let schema = CsvSchema {
        has_header: input.header,
        delimiter: input.delimiter,
    };
    Ok(load_csv(&input.input, &schema)?)
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

pub fn cmd_cluster(args: &ClusterArgs) -> Result<(), CliError> {
    let data = load(&args.input)?;
    let default_cmp = match args.algorithm {
        Algorithm::Dbscan => Comparator::Le,
        _ => Comparator::Lt,
    };
    let job = Job {
        algorithm: args.algorithm,
        epsilon: args.epsilon,
        policy: args.policy.into(),
        minpts: args.minpts,
        comparator: args.comparator.map(Into::into).unwrap_or(default_cmp),
        min_cluster_size: args.min_cluster_size,
    };
    let (labeling, report) = job.run(&data)?;
    write_labels(&labeling, &args.output)?;
    if let Some(path) = &args.report {
        write_json(&report, path)?;
    }
    Ok(())
}

pub fn compare(data: &Dataset, hca: &Job, baseline: &Job) -> Result<ComparisonReport, CliError> {
    let (base_labels, base_report) = baseline.run(data)?;
    let (hca_labels, hca_report) = hca.run(data)?;
    let agreement = AgreementReport::compare(&hca_labels, &base_labels)?;
    let refines_baseline = refinement_check(&hca_labels, &base_labels)?;
    let ppi = ppi_percent(base_report.wall_time_ms, hca_report.wall_time_ms);
    Ok(ComparisonReport {
        runs: vec![base_report, hca_report],
        agreement,
        ppi_percent: ppi,
        refines_baseline,
    })
}

pub fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    let data = load(&args.input)?;
    let hca = Job::hca(args.epsilon, args.policy.into());
    let baseline = Job::baseline(args.baseline.into(), args.epsilon, args.minpts, args.comparator.into());
    let report = compare(&data, &hca, &baseline)?;
    write_json(&report, &args.report)
}

pub fn bench(args: &BenchArgs) -> Result<BenchReport, CliError> {
    let mut sizes = Vec::with_capacity(args.sizes.len());
    for &n in &args.sizes {
        let data = generate(&args.generator.spec(n))?;
        let mut runs = Vec::new();
        for &algorithm in &args.algorithms {
            let job = Job {
                algorithm,
                epsilon: args.epsilon,
                policy: args.policy.into(),
                minpts: args.minpts,
                comparator: Comparator::Lt,
                min_cluster_size: None,
            };
            let (samples, results) = time_runs(args.repeat, || job.execute(&data));
            let results = results.into_iter().collect::<Result<Vec<_>, _>>()?;
            let (first, stats) = &results[0];
            runs.push(BenchRun {
                algorithm,
                median_ms: median(&samples),
                samples_ms: samples,
                cluster_count: first.cluster_count(),
                occupied_cells: stats.map(|s| s.occupied_cells),
                merge_tests: stats.map(|s| s.merge_tests),
                deterministic: results.iter().all(|(l, _)| l == first),
            });
        }
        sizes.push(BenchSize {
            n,
            d: data.dim(),
            runs,
        });
    }

    let mut growth = Vec::new();
    for pair in sizes.windows(2) {
        for (before, after) in pair[0].runs.iter().zip(&pair[1].runs) {
            growth.push(Growth {
                algorithm: before.algorithm,
                from_n: pair[0].n,
                to_n: pair[1].n,
                size_ratio: pair[1].n as f64 / pair[0].n as f64,
                // floor keeps the ratio finite for sub-nanosecond medians
                time_ratio: after.median_ms / before.median_ms.max(1e-6),
            });
        }
    }

    Ok(BenchReport {
        generator: args.generator.to_string(),
        epsilon: args.epsilon,
        repeat: args.repeat,
        policy: args.policy.into(),
        sizes,
        growth,
    })
}

pub fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    let report = bench(args)?;
    write_json(&report, &args.report)
}

pub fn generator_spec(args: &GenerateArgs) -> GeneratorSpec {
    let kind = match args.kind {
        KindArg::Blobs => GeneratorKind::Blobs {
            clusters: args.clusters,
            sigma: args.sigma,
            separation: args.separation,
        },
        KindArg::Rings => GeneratorKind::Rings {
            radii: args.radii.clone(),
            thickness: args.thickness,
        },
        KindArg::Uniform => GeneratorKind::Uniform { extent: args.extent },
    };
    GeneratorSpec::new(kind, args.n, args.dims, args.seed)
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<(), CliError> {
    let data = generate(&generator_spec(args)).map_err(|e| CliError::Usage(e.to_string()))?;
    write_dataset_csv(&data, &args.output)?;
    Ok(())
}
