use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = DoeError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum DoeError {
    #[error("{metric} is undefined for a design of {size} point(s); at least 2 are required")]
    UndefinedMetric { metric: &'static str, size: usize },

    #[error("phi_p overflows: points {first} and {second} coincide")]
    CoincidentPoints { first: usize, second: usize },

    #[error("{metric} overflows for this design")]
    MetricOverflow { metric: &'static str },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {coordinate} = {value} lies outside [{lower}, {upper}]")]
    OutOfBounds {
        coordinate: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("invalid bounds on coordinate {coordinate}: lower {lower} must be < upper {upper}")]
    InvalidBounds {
        coordinate: usize,
        lower: f64,
        upper: f64,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{}: {source}", path.display())]
    File {
        path: PathBuf,
        #[source]
        source: Box<DoeError>,
    },

    #[error("dimension {dim} exceeds the {max} dimensions of the embedded Sobol direction-number table")]
    UnsupportedDimension { dim: usize, max: usize },

    #[error("inconsistent sampler state: {0}")]
    InconsistentState(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("model fit failed: {0}")]
    Fit(String),

    #[error("SVR solver did not converge after {iterations} iterations (KKT residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("config key `{key}`: {message}")]
    Config { key: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl DoeError {
    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        DoeError::File {
            path: path.into(),
            source: Box::new(self),
        }
    }
}
