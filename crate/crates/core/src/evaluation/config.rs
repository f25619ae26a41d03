use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::adaptive::{AdaptiveMethod, AdaptiveSpec, AlphaMode};
use crate::benchmarks::{BenchmarkFunction, BenchmarkId};
use crate::error::{DoeError, Result};
use crate::metamodels::{MetamodelConfig, MetamodelKind};
use crate::oneshot::default_pool;
use crate::sampler::{Method, MethodFamily};

/// One benchmark campaign: a function, the methods to compare and the
/// protocol settings.
///
/// The text form is one `key = value` per line; `#` starts a comment.
/// Keys: `function`, `dim`, `methods`, `metamodel`, `initial_size`,
/// `max_samples`, `repetitions`, `test_points`, `stride`, `seed`, `pool`,
/// `alpha`, `candidates_factor`, `slices_factor`, `slice_presamples`,
/// `gp_length_scales`, `gp_mixtures`, `svr_c`, `svr_epsilon`, `svr_gamma`,
/// `output_dir`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub function: BenchmarkId,
    pub dim: usize,
    pub methods: Vec<Method>,
    pub metamodel: MetamodelConfig,
    pub initial_size: usize,
    pub max_samples: usize,
    pub repetitions: usize,
    pub test_points: usize,
    /// Checkpoint spacing for methods that rebuild their design per size.
    pub stride: usize,
    pub seed: u64,
    /// sf-LHS candidate pool, for initial designs and the baseline.
    pub pool: usize,
    pub alpha: AlphaMode,
    pub candidates_factor: usize,
    pub slices_factor: usize,
    pub slice_presamples: usize,
    pub output_dir: Option<PathBuf>,
}

const KEYS: [&str; 22] = [
    "function",
    "dim",
    "methods",
    "method",
    "metamodel",
    "initial_size",
    "max_samples",
    "repetitions",
    "test_points",
    "stride",
    "seed",
    "pool",
    "alpha",
    "candidates_factor",
    "slices_factor",
    "slice_presamples",
    "gp_length_scales",
    "gp_mixtures",
    "svr_c",
    "svr_epsilon",
    "svr_gamma",
    "output_dir",
];

fn config_err(key: &str, message: impl Into<String>) -> DoeError {
    DoeError::Config {
        key: key.to_string(),
        message: message.into(),
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| config_err(key, format!("cannot parse `{value}`")))
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_value(key, s))
        .collect()
}

impl ExperimentConfig {
    /// Defaults: sf-LHS start of 10 points, `10·dim` samples, 30
    /// repetitions, `5000·dim` test points, stride 10, seed 42, GP.
    pub fn new(function: BenchmarkId, dim: usize, methods: Vec<Method>) -> Self {
        Self {
            function,
            dim,
            methods,
            metamodel: MetamodelConfig::new(MetamodelKind::Gp),
            initial_size: 10,
            max_samples: 10 * dim,
            repetitions: 30,
            test_points: 5000 * dim,
            stride: 10,
            seed: 42,
            pool: default_pool(dim),
            alpha: AlphaMode::Auto,
            candidates_factor: 100,
            slices_factor: 10,
            slice_presamples: 10,
            output_dir: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        BenchmarkFunction::new(self.function, self.dim).map_err(|e| config_err("dim", e.to_string()))?;
        if self.methods.is_empty() {
            return Err(config_err("methods", "at least one method is required"));
        }
        if let Some(m) = self.methods.iter().enumerate().find_map(|(i, m)| self.methods[..i].contains(m).then_some(m)) {
            return Err(config_err("methods", format!("`{m}` listed twice")));
        }
        if self.methods.contains(&Method::Preoptimized) {
            return Err(config_err("methods", "pre-optimized designs cannot be grown; not usable in a campaign"));
        }
        if self.initial_size < 2 {
            return Err(config_err("initial_size", "must be at least 2"));
        }
        if self.initial_size >= self.max_samples {
            return Err(config_err(
                "max_samples",
                format!("must exceed initial_size ({} >= {})", self.initial_size, self.max_samples),
            ));
        }
        for (key, v) in [
            ("repetitions", self.repetitions),
            ("test_points", self.test_points),
            ("stride", self.stride),
            ("pool", self.pool),
            ("candidates_factor", self.candidates_factor),
            ("slices_factor", self.slices_factor),
            ("slice_presamples", self.slice_presamples),
        ] {
            if v == 0 {
                return Err(config_err(key, "must be at least 1"));
            }
        }
        self.adaptive_spec(AdaptiveMethod::Mipt, 0)
            .validate()
            .map_err(|e| config_err("alpha", e.to_string()))?;
        if self.methods.contains(&Method::Sobol) && self.dim > crate::lowdiscrepancy::sobol_max_dim() {
            return Err(config_err(
                "methods",
                format!("sobol supports at most {} dimensions", crate::lowdiscrepancy::sobol_max_dim()),
            ));
        }
        Ok(())
    }

    pub fn benchmark(&self) -> Result<BenchmarkFunction> {
        BenchmarkFunction::new(self.function, self.dim)
    }

    pub(crate) fn adaptive_spec(&self, method: AdaptiveMethod, seed: u64) -> AdaptiveSpec {
        AdaptiveSpec {
            method,
            candidates_per_point: self.candidates_factor,
            slices_per_refinement: self.slices_factor,
            slice_presamples: self.slice_presamples,
            alpha: self.alpha,
            seed,
        }
    }

    /// Sample sizes at which a method is scored: every size for sequential
    /// and adaptive methods, stride checkpoints (plus the final size) for
    /// methods that rebuild their design.
    pub fn checkpoints(&self, method: Method) -> Vec<usize> {
        match method.family() {
            MethodFamily::OneShot => {
                let mut v: Vec<usize> = (self.initial_size..=self.max_samples).step_by(self.stride).collect();
                if v.last() != Some(&self.max_samples) {
                    v.push(self.max_samples);
                }
                v
            }
            _ => (self.initial_size..=self.max_samples).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| DoeError::Parse {
                line: idx + 1,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            let key = key.trim().to_ascii_lowercase();
            let key = if key == "method" { "methods".to_string() } else { key };
            if !KEYS.contains(&key.as_str()) {
                return Err(config_err(&key, format!("unknown key (valid keys: {})", KEYS.join(", "))));
            }
            if entries.insert(key.clone(), (idx + 1, value.trim().to_string())).is_some() {
                return Err(config_err(&key, format!("given twice (line {})", idx + 1)));
            }
        }
        let get = |k: &str| entries.get(k).map(|(_, v)| v.as_str());

        let function: BenchmarkId = match get("function") {
            Some(v) => v.parse().map_err(|e: DoeError| config_err("function", e.to_string()))?,
            None => return Err(config_err("function", "required")),
        };
        let dim = match (get("dim"), function.fixed_dim()) {
            (Some(v), _) => parse_value("dim", v)?,
            (None, Some(d)) => d,
            (None, None) => return Err(config_err("dim", format!("required for {}", function.name()))),
        };
        let methods = match get("methods") {
            Some(v) => v
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<Method>().map_err(|e| config_err("methods", e.to_string())))
                .collect::<Result<Vec<_>>>()?,
            None => vec![Method::Mip, Method::Mipt, Method::FpPlhs, Method::MqPlhs, Method::SfLhs],
        };
        let mut cfg = ExperimentConfig::new(function, dim, methods);

        if let Some(v) = get("metamodel") {
            let kind: MetamodelKind = v.parse().map_err(|e: DoeError| config_err("metamodel", e.to_string()))?;
            cfg.metamodel.kind = kind;
        }
        macro_rules! set {
            ($key:literal, $field:expr) => {
                if let Some(v) = get($key) {
                    $field = parse_value($key, v)?;
                }
            };
        }
        set!("initial_size", cfg.initial_size);
        set!("max_samples", cfg.max_samples);
        set!("repetitions", cfg.repetitions);
        set!("test_points", cfg.test_points);
        set!("stride", cfg.stride);
        set!("pool", cfg.pool);
        set!("candidates_factor", cfg.candidates_factor);
        set!("slices_factor", cfg.slices_factor);
        set!("slice_presamples", cfg.slice_presamples);
        set!("svr_c", cfg.metamodel.svr.c);
        set!("svr_epsilon", cfg.metamodel.svr.epsilon);
        if let Some(v) = get("seed") {
            cfg.seed = parse_value("seed", v)?;
        }
        if let Some(v) = get("alpha") {
            cfg.alpha = v.parse().map_err(|e: DoeError| config_err("alpha", e.to_string()))?;
        }
        if let Some(v) = get("svr_gamma") {
            cfg.metamodel.svr.gamma = if v == "auto" { None } else { Some(parse_value("svr_gamma", v)?) };
        }
        if let Some(v) = get("gp_length_scales") {
            cfg.metamodel.gp.length_scales = parse_list("gp_length_scales", v)?;
        }
        if let Some(v) = get("gp_mixtures") {
            cfg.metamodel.gp.mixtures = parse_list("gp_mixtures", v)?;
        }
        if let Some(v) = get("output_dir") {
            cfg.output_dir = Some(PathBuf::from(v));
        }
        if cfg.metamodel.gp.length_scales.is_empty() || cfg.metamodel.gp.length_scales.iter().any(|v| *v <= 0.0) {
            return Err(config_err("gp_length_scales", "needs positive values"));
        }
        if cfg.metamodel.gp.mixtures.is_empty() || cfg.metamodel.gp.mixtures.iter().any(|v| *v <= 0.0) {
            return Err(config_err("gp_mixtures", "needs positive values"));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| DoeError::from(e).in_file(path))?;
        Self::parse(&text).map_err(|e| e.in_file(path))
    }

    /// All resolved settings in the config file syntax.
    pub fn to_config_string(&self) -> String {
        let list = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        let methods: Vec<&str> = self.methods.iter().map(|m| m.name()).collect();
        let mut s = String::new();
        let _ = writeln!(s, "function = {}", self.function.name());
        let _ = writeln!(s, "dim = {}", self.dim);
        let _ = writeln!(s, "methods = {}", methods.join(","));
        let _ = writeln!(s, "metamodel = {}", self.metamodel.kind);
        let _ = writeln!(s, "initial_size = {}", self.initial_size);
        let _ = writeln!(s, "max_samples = {}", self.max_samples);
        let _ = writeln!(s, "repetitions = {}", self.repetitions);
        let _ = writeln!(s, "test_points = {}", self.test_points);
        let _ = writeln!(s, "stride = {}", self.stride);
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "pool = {}", self.pool);
        let _ = writeln!(s, "alpha = {}", self.alpha);
        let _ = writeln!(s, "candidates_factor = {}", self.candidates_factor);
        let _ = writeln!(s, "slices_factor = {}", self.slices_factor);
        let _ = writeln!(s, "slice_presamples = {}", self.slice_presamples);
        let _ = writeln!(s, "gp_length_scales = {}", list(&self.metamodel.gp.length_scales));
        let _ = writeln!(s, "gp_mixtures = {}", list(&self.metamodel.gp.mixtures));
        let _ = writeln!(s, "svr_c = {}", self.metamodel.svr.c);
        let _ = writeln!(s, "svr_epsilon = {}", self.metamodel.svr.epsilon);
        let _ = match self.metamodel.svr.gamma {
            Some(g) => writeln!(s, "svr_gamma = {g}"),
            None => writeln!(s, "svr_gamma = auto"),
        };
        if let Some(dir) = &self.output_dir {
            let _ = writeln!(s, "output_dir = {}", dir.display());
        }
        s
    }
}
