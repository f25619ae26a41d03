use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::config::ExperimentConfig;
use super::{aggregate_ci, rmse};
use crate::adaptive::{draw_candidates, AdaptiveSampler};
use crate::benchmarks::BenchmarkFunction;
use crate::design::DesignMatrix;
use crate::error::{DoeError, Result};
use crate::lowdiscrepancy::sequence_design;
use crate::metamodels::TrainingSet;
use crate::oneshot::{random_lhs, sf_lhs};
use crate::rng;
use crate::sampler::{Method, MethodFamily};

pub const RAW_HEADER: &str = "method,function,dim,metamodel,repetition,n_samples,rmse";
pub const AGGREGATE_HEADER: &str = "method,function,dim,metamodel,n_samples,mean_rmse,ci_low,ci_high,failures";

// labels for seed derivation below the root seed
const INITIAL: u64 = 0;
const CLOUD: u64 = 1;
const SAMPLER: u64 = 2;
const REBUILD: u64 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub method: Method,
    pub repetition: usize,
    pub n_samples: usize,
    /// `None` when the metamodel could not be fitted.
    pub rmse: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub method: Method,
    pub n_samples: usize,
    /// `None` when every repetition failed at this size.
    pub mean: Option<f64>,
    pub half_width: f64,
    pub failures: usize,
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub records: Vec<ExperimentRecord>,
    pub aggregates: Vec<AggregateRow>,
    pub wall_time: Duration,
}

struct Repetition<'a> {
    config: &'a ExperimentConfig,
    function: &'a BenchmarkFunction,
    index: usize,
    cloud: DesignMatrix,
    truth: Vec<f64>,
}

impl Repetition<'_> {
    fn seed(&self, path: &[u64]) -> u64 {
        let mut full = vec![self.index as u64];
        full.extend_from_slice(path);
        rng::derive(self.config.seed, &full)
    }

    fn score(&self, design: &DesignMatrix) -> Result<Option<f64>> {
        let y = design
            .points()
            .map(|p| self.function.evaluate_unit(p))
            .collect::<Result<Vec<f64>>>()?;
        let model = match self.config.metamodel.fit(&TrainingSet::new(design.clone(), y)?) {
            Ok(m) => m,
            Err(DoeError::Fit(_) | DoeError::NoConvergence { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let pred: Vec<f64> = self
            .cloud
            .as_flat()
            .par_chunks_exact(self.cloud.dim())
            .with_min_len(512)
            .map(|p| model.predict(p))
            .collect();
        rmse(&self.truth, &pred).map(Some)
    }

    fn run(&self, method: Method) -> Result<Vec<ExperimentRecord>> {
        let cfg = self.config;
        let d = cfg.dim;
        let mut out = Vec::new();
        let mut record = |n: usize, rmse: Option<f64>| {
            out.push(ExperimentRecord {
                method,
                repetition: self.index,
                n_samples: n,
                rmse,
            })
        };
        match method.family() {
            MethodFamily::Adaptive(kind) => {
                let mut design = sf_lhs(cfg.initial_size, d, self.seed(&[INITIAL]), cfg.pool)?;
                let spec = cfg.adaptive_spec(kind, self.seed(&[SAMPLER, method.code()]));
                let mut sampler = AdaptiveSampler::new(spec)?;
                record(design.size(), self.score(&design)?);
                while design.size() < cfg.max_samples {
                    let step = sampler.next_step(&design)?;
                    design.push(&step.point)?;
                    record(design.size(), self.score(&design)?);
                }
            }
            MethodFamily::Sequence(kind) => {
                let full = sequence_design(kind, d, cfg.max_samples)?;
                for n in cfg.checkpoints(method) {
                    record(n, self.score(&full.prefix(n))?);
                }
            }
            MethodFamily::OneShot => {
                for n in cfg.checkpoints(method) {
                    let seed = self.seed(&[REBUILD, method.code(), n as u64]);
                    let design = match method {
                        Method::SfLhs => sf_lhs(n, d, seed, cfg.pool)?,
                        Method::RandomLhs => random_lhs(n, d, seed)?,
                        _ => unreachable!("rejected by config validation"),
                    };
                    record(n, self.score(&design)?);
                }
            }
        }
        Ok(out)
    }
}

/// Runs every method on every repetition. Repetitions run in parallel; each
/// derives all of its randomness from `(seed, repetition)`, so the result
/// does not depend on scheduling.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let start = Instant::now();
    let function = config.benchmark()?;

    let per_rep: Vec<Vec<ExperimentRecord>> = (0..config.repetitions)
        .into_par_iter()
        .map(|r| {
            let cloud_seed = rng::derive(config.seed, &[r as u64, CLOUD]);
            let cloud = draw_candidates(config.test_points, config.dim, &mut rng::stream(cloud_seed, 0));
            let truth = cloud
                .points()
                .map(|p| function.evaluate_unit(p))
                .collect::<Result<Vec<f64>>>()?;
            let rep = Repetition {
                config,
                function: &function,
                index: r,
                cloud,
                truth,
            };
            let mut all = Vec::new();
            for &m in &config.methods {
                all.extend(rep.run(m)?);
            }
            Ok(all)
        })
        .collect::<Result<_>>()?;

    // method-major, then repetition, then size
    let mut records = Vec::new();
    for &m in &config.methods {
        for rep in &per_rep {
            records.extend(rep.iter().filter(|r| r.method == m).cloned());
        }
    }
    let aggregates = aggregate(config, &records)?;
    Ok(ExperimentResult {
        config: config.clone(),
        records,
        aggregates,
        wall_time: start.elapsed(),
    })
}

/// Per-(method, size) mean and 95% interval over repetitions, skipping
/// failed fits.
pub(crate) fn aggregate(config: &ExperimentConfig, records: &[ExperimentRecord]) -> Result<Vec<AggregateRow>> {
    let mut rows = Vec::new();
    for &method in &config.methods {
        for n in config.checkpoints(method) {
            let cell: Vec<&ExperimentRecord> = records
                .iter()
                .filter(|r| r.method == method && r.n_samples == n)
                .collect();
            let values: Vec<f64> = cell.iter().filter_map(|r| r.rmse).collect();
            let failures = cell.len() - values.len();
            let (mean, half_width) = if values.is_empty() {
                (None, 0.0)
            } else {
                let (m, h) = aggregate_ci(&values, 0.95)?;
                (Some(m), h)
            };
            rows.push(AggregateRow {
                method,
                n_samples: n,
                mean,
                half_width,
                failures,
            });
        }
    }
    Ok(rows)
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl ExperimentResult {
    fn prefix(&self, method: Method) -> String {
        format!(
            "{},{},{},{}",
            method,
            self.config.function.name(),
            self.config.dim,
            self.config.metamodel.kind
        )
    }

    pub fn raw_csv(&self) -> String {
        let mut s = format!("{RAW_HEADER}\n");
        for r in &self.records {
            let _ = writeln!(s, "{},{},{},{}", self.prefix(r.method), r.repetition, r.n_samples, opt(r.rmse));
        }
        s
    }

    pub fn aggregate_csv(&self) -> String {
        let mut s = format!("{AGGREGATE_HEADER}\n");
        for a in &self.aggregates {
            let (lo, hi) = match a.mean {
                Some(m) => (Some(m - a.half_width), Some(m + a.half_width)),
                None => (None, None),
            };
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                self.prefix(a.method),
                a.n_samples,
                opt(a.mean),
                opt(lo),
                opt(hi),
                a.failures
            );
        }
        s
    }

    pub fn metadata(&self) -> String {
        let mut s = String::from("# resolved configuration\n");
        s.push_str(&self.config.to_config_string());
        s.push_str("\n# metamodel\n");
        for line in self.config.metamodel.describe() {
            let _ = writeln!(s, "{line}");
        }
        let failures: usize = self.records.iter().filter(|r| r.rmse.is_none()).count();
        let _ = writeln!(s, "\n# run");
        let _ = writeln!(s, "records = {}", self.records.len());
        let _ = writeln!(s, "failed_fits = {failures}");
        let _ = writeln!(s, "threads = {}", rayon::current_num_threads());
        let _ = writeln!(s, "wall_time_seconds = {:.3}", self.wall_time.as_secs_f64());
        s
    }

    /// Mean RMSE of `method` at `n`, if recorded.
    pub fn mean_at(&self, method: Method, n: usize) -> Option<f64> {
        self.aggregates
            .iter()
            .find(|a| a.method == method && a.n_samples == n)
            .and_then(|a| a.mean)
    }

    /// Writes `raw.csv`, `aggregate.csv` and `metadata.txt` into `dir`,
    /// returning the paths. Files already written are removed if a later
    /// write fails.
    pub fn write(&self, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| DoeError::from(e).in_file(dir))?;
        let mut written = Vec::new();
        for (name, body) in [
            ("raw.csv", self.raw_csv()),
            ("aggregate.csv", self.aggregate_csv()),
            ("metadata.txt", self.metadata()),
        ] {
            let path = dir.join(name);
            if let Err(e) = std::fs::write(&path, body) {
                for p in &written {
                    let _ = std::fs::remove_file(p);
                }
                let _ = std::fs::remove_file(&path);
                return Err(DoeError::from(e).in_file(path));
            }
            written.push(path);
        }
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::BenchmarkId;
    use crate::metamodels::MetamodelKind;

    fn small(methods: Vec<Method>) -> ExperimentConfig {
        let mut c = ExperimentConfig::new(BenchmarkId::Sphere, 2, methods);
        c.max_samples = 16;
        c.initial_size = 6;
        c.repetitions = 3;
        c.test_points = 300;
        c.stride = 5;
        c.pool = 50;
        c.candidates_factor = 20;
        c
    }

    #[test]
    fn records_cover_every_checkpoint() {
        let cfg = small(vec![Method::Mipt, Method::SfLhs, Method::Sobol]);
        let res = run_experiment(&cfg).unwrap();
        let count = |m| res.records.iter().filter(|r| r.method == m).count();
        assert_eq!(count(Method::Mipt), 3 * 11);
        assert_eq!(count(Method::Sobol), 3 * 11);
        assert_eq!(count(Method::SfLhs), 3 * 3);
        assert_eq!(res.aggregates.len(), 11 + 11 + 3);
        assert!(res.records.iter().all(|r| r.rmse.is_some_and(|v| v.is_finite() && v >= 0.0)));
    }

    #[test]
    fn single_repetition_has_zero_width() {
        let mut cfg = small(vec![Method::Mip, Method::RandomLhs]);
        cfg.repetitions = 1;
        let res = run_experiment(&cfg).unwrap();
        assert!(res.aggregates.iter().all(|a| a.half_width == 0.0));
    }

    #[test]
    fn aggregates_recompute_from_records() {
        let res = run_experiment(&small(vec![Method::FpPlhs, Method::MqPlhs])).unwrap();
        assert_eq!(aggregate(&res.config, &res.records).unwrap(), res.aggregates);
        for a in &res.aggregates {
            let vals: Vec<f64> = res
                .records
                .iter()
                .filter(|r| r.method == a.method && r.n_samples == a.n_samples)
                .filter_map(|r| r.rmse)
                .collect();
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            assert!((a.mean.unwrap() - mean).abs() < 1e-12);
        }
    }

    #[test]
    fn adaptive_methods_share_the_initial_design() {
        let res = run_experiment(&small(vec![Method::Mip, Method::MqPlhs])).unwrap();
        for r in 0..3 {
            let first = |m| {
                res.records
                    .iter()
                    .find(|x| x.method == m && x.repetition == r)
                    .and_then(|x| x.rmse)
            };
            assert_eq!(first(Method::Mip), first(Method::MqPlhs));
        }
    }

    #[test]
    fn output_is_reproducible() {
        let mut cfg = small(vec![Method::Mipt, Method::Halton]);
        cfg.metamodel.kind = MetamodelKind::Svr;
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a.raw_csv(), b.raw_csv());
        assert_eq!(a.aggregate_csv(), b.aggregate_csv());
        assert!(a.raw_csv().starts_with(RAW_HEADER));
        assert!(a.metadata().contains("svr_c = 100"));
    }

    #[test]
    fn failed_fits_become_empty_cells() {
        let mut cfg = small(vec![Method::SfLhs]);
        cfg.metamodel.kind = MetamodelKind::Svr;
        cfg.metamodel.svr.max_iterations = 1;
        let res = run_experiment(&cfg).unwrap();
        assert!(res.records.iter().all(|r| r.rmse.is_none()));
        assert!(res.aggregates.iter().all(|a| a.mean.is_none() && a.failures == 3));
        assert!(res.aggregate_csv().lines().nth(1).unwrap().ends_with(",,,,3"));
    }
}
