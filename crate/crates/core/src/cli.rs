//! Command-line front end. The `doe` binary only parses arguments and calls
//! [`run`]; everything here is usable from tests.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::adaptive::{AdaptiveSampler, AlphaMode};
use crate::design::DesignMatrix;
use crate::error::{DoeError, Result};
use crate::evaluation::{run_experiment, ExperimentConfig};
use crate::lowdiscrepancy::sequence_design;
use crate::metamodels::MetamodelKind;
use crate::metrics::MetricReport;
use crate::oneshot::{default_pool, load_design, random_lhs, sf_lhs};
use crate::rng;
use crate::sampler::{Method, MethodFamily};
use crate::voronoi::{darkness, voronoi_cell_areas};

pub const DEFAULT_SEED: u64 = 42;
const DEFAULT_P: u32 = 50;

#[derive(Debug, Parser)]
#[command(name = "doe", version, about = "Space-filling and sequential design of experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a design and write it with its metric trace.
    Generate(GenerateArgs),
    /// Report the quality metrics of a design file.
    Metrics(MetricsArgs),
    /// Run a benchmark campaign described by a config file.
    Benchmark(BenchmarkArgs),
    /// Estimate Voronoi cell areas of a design.
    Voronoi(VoronoiArgs),
}

/// `--seed` value: a number or `random`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedArg {
    Fixed(u64),
    Random,
}

impl FromStr for SeedArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "random" {
            return Ok(SeedArg::Random);
        }
        s.parse()
            .map(SeedArg::Fixed)
            .map_err(|_| format!("seed must be an unsigned integer or `random`, got `{s}`"))
    }
}

impl SeedArg {
    pub fn resolve(self) -> u64 {
        match self {
            SeedArg::Fixed(s) => s,
            SeedArg::Random => rand::random(),
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// lhs, sflhs, preoptimized, halton, sobol, mip, mipt, fpplhs or mqplhs
    #[arg(long)]
    pub method: Method,
    #[arg(long)]
    pub dim: Option<usize>,
    /// Final design size.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value = "42")]
    pub seed: SeedArg,
    #[arg(long)]
    pub out: PathBuf,
    /// Metric trace file; defaults to the output path with a `.trace.csv` suffix.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Starting design file for adaptive methods.
    #[arg(long, conflicts_with = "init_size")]
    pub initial: Option<PathBuf>,
    /// Size of a generated sf-LHS starting design for adaptive methods.
    #[arg(long)]
    pub init_size: Option<usize>,
    /// Threshold tolerance for mipt: `auto` or a value in [0, 1].
    #[arg(long, default_value = "auto")]
    pub alpha: AlphaMode,
    /// sf-LHS candidate pool (default 1000·dim).
    #[arg(long)]
    pub pool: Option<usize>,
    /// Design file for the pre-optimized method.
    #[arg(long)]
    pub path: Option<PathBuf>,
    /// Candidates per design point for the Monte Carlo samplers.
    #[arg(long, default_value_t = 100)]
    pub candidates: usize,
    /// Exponent of the φ_p report.
    #[arg(long, default_value_t = DEFAULT_P)]
    pub p: u32,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long)]
    pub design: PathBuf,
    #[arg(long, default_value_t = DEFAULT_P)]
    pub p: u32,
    /// Also write the report as `metric,value` CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides `output_dir` from the config (default `results`).
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Overrides the config's metamodel.
    #[arg(long)]
    pub metamodel: Option<MetamodelKind>,
    /// Overrides the config's root seed.
    #[arg(long)]
    pub seed: Option<SeedArg>,
}

#[derive(Debug, Args)]
pub struct VoronoiArgs {
    #[arg(long)]
    pub design: PathBuf,
    #[arg(long, default_value_t = 100_000)]
    pub probes: usize,
    #[arg(long, default_value = "42")]
    pub seed: SeedArg,
    #[arg(long)]
    pub out: PathBuf,
}

/// Files written by a command; removed again unless the command completes.
struct Outputs {
    paths: Vec<PathBuf>,
    done: bool,
}

impl Outputs {
    fn new() -> Self {
        Self {
            paths: Vec::new(),
            done: false,
        }
    }

    fn write(&mut self, path: &Path, body: &str) -> Result<()> {
        self.paths.push(path.to_path_buf());
        std::fs::write(path, body).map_err(|e| DoeError::from(e).in_file(path))
    }

    fn keep(mut self) {
        self.done = true;
    }
}

impl Drop for Outputs {
    fn drop(&mut self) {
        if !self.done {
            for p in &self.paths {
                let _ = std::fs::remove_file(p);
            }
        }
    }
}

/// Caps rayon's worker count from `DOE_THREADS`, if set.
pub fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("DOE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| DoeError::InvalidArgument(format!("DOE_THREADS must be a positive integer, got `{v}`")))?;
    // a pool already built (e.g. by an earlier call) is fine
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Generate(a) => generate(a, out),
        Command::Metrics(a) => metrics(a, out),
        Command::Benchmark(a) => benchmark(a, out),
        Command::Voronoi(a) => voronoi(a, out),
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn report_text(r: &MetricReport, p: u32) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "size: {}", r.size);
    let pairwise = |name: &str, v: Option<f64>, why: &str| match v {
        Some(x) => format!("{name}: {x}\n"),
        None => format!("{name}: undefined ({why})\n"),
    };
    let few = "needs at least 2 points";
    s.push_str(&pairwise("intersite", r.intersite, few));
    s.push_str(&pairwise("projected", r.projected, few));
    let phi_why = if r.size < 2 { few } else { "coincident points" };
    s.push_str(&pairwise(&format!("phi_p (p={p})"), r.phi_p, phi_why));
    let _ = writeln!(s, "lhs_fraction: {}", r.lhs_fraction);
    s
}

fn trace_row(r: &MetricReport) -> String {
    format!(
        "{},{},{},{}\n",
        r.size,
        fmt_opt(r.intersite),
        fmt_opt(r.projected),
        r.lhs_fraction
    )
}

fn require<T>(v: Option<T>, flag: &str, method: Method) -> Result<T> {
    v.ok_or_else(|| DoeError::InvalidArgument(format!("--{flag} is required for method {method}")))
}

fn generate(a: GenerateArgs, out: &mut dyn Write) -> Result<()> {
    let seed = a.seed.resolve();
    writeln!(out, "seed: {seed}")?;
    let mut trace = String::from("n,intersite,projected,lhs_fraction\n");

    let design = match a.method.family() {
        MethodFamily::OneShot if a.method == Method::Preoptimized => {
            let path = require(a.path.clone(), "path", a.method)?;
            let design = load_design(&path)?;
            if let Some(d) = a.dim.filter(|d| *d != design.dim()) {
                return Err(DoeError::DimensionMismatch {
                    expected: d,
                    found: design.dim(),
                }
                .in_file(path));
            }
            if let Some(n) = a.n.filter(|n| *n != design.size()) {
                return Err(DoeError::InvalidArgument(format!(
                    "--n {n} does not match the {} points in {}",
                    design.size(),
                    path.display()
                )));
            }
            design
        }
        MethodFamily::OneShot => {
            let (n, d) = (require(a.n, "n", a.method)?, require(a.dim, "dim", a.method)?);
            match a.method {
                Method::SfLhs => sf_lhs(n, d, seed, a.pool.unwrap_or(default_pool(d)))?,
                _ => random_lhs(n, d, seed)?,
            }
        }
        MethodFamily::Sequence(kind) => {
            let (n, d) = (require(a.n, "n", a.method)?, require(a.dim, "dim", a.method)?);
            sequence_design(kind, d, n)?
        }
        MethodFamily::Adaptive(kind) => {
            let n = require(a.n, "n", a.method)?;
            let mut design = match (&a.initial, a.init_size) {
                (Some(path), _) => {
                    let d = load_design(path)?;
                    if let Some(dim) = a.dim.filter(|x| *x != d.dim()) {
                        return Err(DoeError::DimensionMismatch {
                            expected: dim,
                            found: d.dim(),
                        }
                        .in_file(path));
                    }
                    d
                }
                (None, Some(k)) => {
                    let d = require(a.dim, "dim", a.method)?;
                    sf_lhs(k, d, rng::derive(seed, &[0]), a.pool.unwrap_or(default_pool(d)))?
                }
                (None, None) => {
                    return Err(DoeError::InvalidArgument(format!(
                        "method {} needs a starting design: pass --initial <file> or --init-size <k>",
                        a.method
                    )))
                }
            };
            if n < design.size() {
                return Err(DoeError::InvalidArgument(format!(
                    "--n {n} is smaller than the starting design ({} points)",
                    design.size()
                )));
            }
            let mut spec = crate::adaptive::AdaptiveSpec::new(kind, seed).with_alpha(a.alpha);
            spec.candidates_per_point = a.candidates;
            let mut sampler = AdaptiveSampler::new(spec)?;
            while design.size() < n {
                let step = sampler.next_step(&design)?;
                design.push(&step.point)?;
                trace.push_str(&trace_row(&MetricReport::of(&design, a.p)));
            }
            if sampler.fallbacks() > 0 {
                writeln!(out, "threshold fallbacks: {}", sampler.fallbacks())?;
            }
            design
        }
    };
    if !matches!(a.method.family(), MethodFamily::Adaptive(_)) {
        trace.push_str(&trace_row(&MetricReport::of(&design, a.p)));
    }

    let trace_path = a.trace.clone().unwrap_or_else(|| {
        let mut s = a.out.clone().into_os_string();
        s.push(".trace.csv");
        PathBuf::from(s)
    });
    let mut files = Outputs::new();
    files.write(&a.out, &design.to_csv_string())?;
    files.write(&trace_path, &trace)?;
    let report = MetricReport::of(&design, a.p);
    write!(out, "{}", report_text(&report, a.p))?;
    writeln!(out, "design: {}", a.out.display())?;
    writeln!(out, "trace: {}", trace_path.display())?;
    files.keep();
    Ok(())
}

fn metrics(a: MetricsArgs, out: &mut dyn Write) -> Result<()> {
    let design = DesignMatrix::read_csv(&a.design)?;
    let report = MetricReport::of(&design, a.p);
    write!(out, "{}", report_text(&report, a.p))?;
    if let Some(path) = &a.out {
        let body = format!(
            "metric,value\nsize,{}\nintersite,{}\nprojected,{}\nphi_p,{}\nlhs_fraction,{}\n",
            report.size,
            fmt_opt(report.intersite),
            fmt_opt(report.projected),
            fmt_opt(report.phi_p),
            report.lhs_fraction
        );
        let mut files = Outputs::new();
        files.write(path, &body)?;
        files.keep();
    }
    Ok(())
}

fn benchmark(a: BenchmarkArgs, out: &mut dyn Write) -> Result<()> {
    let mut config = ExperimentConfig::from_file(&a.config)?;
    if let Some(kind) = a.metamodel {
        config.metamodel.kind = kind;
    }
    if let Some(seed) = a.seed {
        config.seed = seed.resolve();
    }
    let dir = a
        .out_dir
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("results"));
    config.output_dir = Some(dir.clone());
    writeln!(out, "seed: {}", config.seed)?;
    writeln!(
        out,
        "running {} x {} repetitions on {} (d = {}, {})",
        config.methods.iter().map(|m| m.name()).collect::<Vec<_>>().join(","),
        config.repetitions,
        config.function.name(),
        config.dim,
        config.metamodel.kind
    )?;
    let result = run_experiment(&config)?;
    for path in result.write(&dir)? {
        writeln!(out, "wrote {}", path.display())?;
    }
    let failures = result.records.iter().filter(|r| r.rmse.is_none()).count();
    if failures > 0 {
        writeln!(out, "failed fits: {failures}")?;
    }
    for m in &config.methods {
        if let Some(mean) = result.mean_at(*m, config.max_samples) {
            writeln!(out, "{m}: mean rmse at n = {}: {mean}", config.max_samples)?;
        }
    }
    Ok(())
}

fn voronoi(a: VoronoiArgs, out: &mut dyn Write) -> Result<()> {
    let seed = a.seed.resolve();
    writeln!(out, "seed: {seed}")?;
    let design = DesignMatrix::read_csv(&a.design)?;
    let areas = voronoi_cell_areas(&design, a.probes, seed)?;
    let dark = darkness(&areas);
    let planar = design.dim() == 2;
    let mut body = String::from(if planar {
        "generator,x,y,area,darkness\n"
    } else {
        "generator,area,darkness\n"
    });
    for (i, (area, dk)) in areas.iter().zip(&dark).enumerate() {
        if planar {
            let p = design.point(i);
            let _ = writeln!(body, "{i},{},{},{area},{dk}", p[0], p[1]);
        } else {
            let _ = writeln!(body, "{i},{area},{dk}");
        }
    }
    let mut files = Outputs::new();
    files.write(&a.out, &body)?;
    files.keep();
    writeln!(out, "cells: {} ({} probes)", areas.len(), a.probes)?;
    writeln!(out, "wrote {}", a.out.display())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> std::result::Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("doe").chain(args.iter().copied()))
    }

    fn exec(args: &[&str]) -> Result<String> {
        let mut buf = Vec::new();
        run(parse(args).expect("valid arguments"), &mut buf)?;
        Ok(String::from_utf8(buf).unwrap())
    }

    #[test]
    fn seed_argument() {
        assert_eq!("7".parse::<SeedArg>().unwrap(), SeedArg::Fixed(7));
        assert_eq!("random".parse::<SeedArg>().unwrap(), SeedArg::Random);
        assert!("-1".parse::<SeedArg>().is_err());
    }

    #[test]
    fn missing_out_and_unknown_flags_are_rejected() {
        assert!(parse(&["generate", "--method", "lhs", "--dim", "2", "--n", "4"]).is_err());
        assert!(parse(&["metrics", "--design", "x.csv", "--bogus"]).is_err());
        assert!(parse(&["generate", "--method", "nope", "--out", "x"]).is_err());
    }

    #[test]
    fn sflhs_generation() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("d.csv");
        let o = out.to_str().unwrap();
        let text = exec(&["generate", "--method", "sflhs", "--dim", "2", "--n", "20", "--seed", "1", "--out", o]).unwrap();
        assert!(text.starts_with("seed: 1\n"));
        assert!(text.contains("lhs_fraction: 1\n"));
        let d = DesignMatrix::read_csv(&out).unwrap();
        assert_eq!((d.size(), d.dim()), (20, 2));
        assert!(dir.path().join("d.csv.trace.csv").exists());
    }

    #[test]
    fn adaptive_generation_from_initial_file() {
        let dir = tempfile::tempdir().unwrap();
        let init = dir.path().join("init.csv");
        sf_lhs(20, 2, 3, 100).unwrap().write_csv(&init).unwrap();
        let out = dir.path().join("d.csv");
        let trace = dir.path().join("t.csv");
        exec(&[
            "generate", "--method", "mipt", "--initial", init.to_str().unwrap(), "--n", "40",
            "--alpha", "auto", "--out", out.to_str().unwrap(), "--trace", trace.to_str().unwrap(),
        ])
        .unwrap();
        assert_eq!(DesignMatrix::read_csv(&out).unwrap().size(), 40);
        let rows: Vec<String> = std::fs::read_to_string(&trace).unwrap().lines().map(String::from).collect();
        assert_eq!(rows[0], "n,intersite,projected,lhs_fraction");
        assert_eq!(rows.len(), 21);
        assert!(rows[1].starts_with("21,"));
    }

    #[test]
    fn adaptive_without_start_fails_and_leaves_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("d.csv");
        let err = exec(&["generate", "--method", "fpplhs", "--dim", "2", "--n", "8", "--out", out.to_str().unwrap()]);
        assert!(err.is_err());
        assert!(!out.exists());
    }

    #[test]
    fn metrics_notices() {
        let dir = tempfile::tempdir().unwrap();
        let one = dir.path().join("one.csv");
        std::fs::write(&one, "0.5,0.5\n").unwrap();
        let text = exec(&["metrics", "--design", one.to_str().unwrap()]).unwrap();
        assert!(text.contains("intersite: undefined"));
        let dup = dir.path().join("dup.csv");
        std::fs::write(&dup, "0.2,0.3\n0.2,0.3\n0.9,0.9\n").unwrap();
        let report = dir.path().join("r.csv");
        let text = exec(&["metrics", "--design", dup.to_str().unwrap(), "--out", report.to_str().unwrap()]).unwrap();
        assert!(text.contains("intersite: 0\n"), "{text}");
        assert!(text.contains("coincident"));
        assert!(std::fs::read_to_string(report).unwrap().contains("intersite,0\n"));
    }

    #[test]
    fn metrics_parse_error_names_file_and_line() {
        let dir = tempfile::tempdir().unwrap();
        let bad = dir.path().join("bad.csv");
        std::fs::write(&bad, "0.1,0.2\n0.3,x\n").unwrap();
        let err = exec(&["metrics", "--design", bad.to_str().unwrap()]).unwrap_err().to_string();
        assert!(err.contains("bad.csv") && err.contains("line 2"), "{err}");
    }

    #[test]
    fn voronoi_output() {
        let dir = tempfile::tempdir().unwrap();
        let design = dir.path().join("d.csv");
        std::fs::write(&design, "0.25,0.5\n0.75,0.5\n").unwrap();
        let out = dir.path().join("v.csv");
        exec(&["voronoi", "--design", design.to_str().unwrap(), "--probes", "20000", "--out", out.to_str().unwrap()])
            .unwrap();
        let text = std::fs::read_to_string(&out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("generator,x,y,area,darkness"));
        let areas: Vec<f64> = lines.map(|l| l.split(',').nth(3).unwrap().parse().unwrap()).collect();
        assert!((areas.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert!((areas[0] - 0.5).abs() < 0.02);
    }

    #[test]
    fn benchmark_writes_outputs() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("c.txt");
        std::fs::write(
            &cfg,
            "function = sphere\ndim = 2\nmethods = mip, lhs\nrepetitions = 1\ninitial_size = 5\nmax_samples = 9\ntest_points = 200\nstride = 2\npool = 20\ncandidates_factor = 10\n",
        )
        .unwrap();
        let res = dir.path().join("res");
        let text = exec(&["benchmark", "--config", cfg.to_str().unwrap(), "--out-dir", res.to_str().unwrap()]).unwrap();
        assert!(text.starts_with("seed: 42\n"));
        let agg = std::fs::read_to_string(res.join("aggregate.csv")).unwrap();
        for line in agg.lines().skip(1) {
            let f: Vec<&str> = line.split(',').collect();
            assert_eq!(f[6], f[5]);
            assert_eq!(f[7], f[5]);
        }
        assert!(res.join("metadata.txt").exists());
    }
}
