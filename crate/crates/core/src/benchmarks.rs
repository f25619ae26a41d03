//! Analytic test functions and their domains.
//!
//! | id             | domain        | dimensions |
//! |----------------|---------------|------------|
//! | `shubert2`     | `[-2, 2]^2`   | 2          |
//! | `ackley`       | `[-5, 5]^d`   | any d ≥ 2  |
//! | `rosenbrock`   | `[-2, 2]^d`   | any d ≥ 2  |
//! | `michalewicz2` | `[0, 4]^2`    | 2          |
//! | `sphere`       | `[-5, 5]^d`   | any d ≥ 2  |
//! | `zakharov2`    | `[-10, 10]^2` | 2          |

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use crate::design::Bounds;
use crate::error::{DoeError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchmarkId {
    Shubert2,
    Ackley,
    Rosenbrock,
    Michalewicz2,
    Sphere,
    Zakharov2,
}

impl BenchmarkId {
    pub const ALL: [BenchmarkId; 6] = [
        BenchmarkId::Shubert2,
        BenchmarkId::Ackley,
        BenchmarkId::Rosenbrock,
        BenchmarkId::Michalewicz2,
        BenchmarkId::Sphere,
        BenchmarkId::Zakharov2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchmarkId::Shubert2 => "shubert2",
            BenchmarkId::Ackley => "ackley",
            BenchmarkId::Rosenbrock => "rosenbrock",
            BenchmarkId::Michalewicz2 => "michalewicz2",
            BenchmarkId::Sphere => "sphere",
            BenchmarkId::Zakharov2 => "zakharov2",
        }
    }

    /// Functions defined only in two dimensions.
    pub fn fixed_dim(self) -> Option<usize> {
        match self {
            BenchmarkId::Shubert2 | BenchmarkId::Michalewicz2 | BenchmarkId::Zakharov2 => Some(2),
            _ => None,
        }
    }

    fn interval(self) -> (f64, f64) {
        match self {
            BenchmarkId::Shubert2 | BenchmarkId::Rosenbrock => (-2.0, 2.0),
            BenchmarkId::Ackley | BenchmarkId::Sphere => (-5.0, 5.0),
            BenchmarkId::Michalewicz2 => (0.0, 4.0),
            BenchmarkId::Zakharov2 => (-10.0, 10.0),
        }
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchmarkId {
    type Err = DoeError;

    fn from_str(s: &str) -> Result<Self> {
        BenchmarkId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                let valid: Vec<&str> = BenchmarkId::ALL.iter().map(|id| id.name()).collect();
                DoeError::InvalidArgument(format!(
                    "unknown function `{s}`; valid ids are {}",
                    valid.join(", ")
                ))
            })
    }
}

/// A benchmark function instantiated at a dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkFunction {
    id: BenchmarkId,
    dim: usize,
    bounds: Bounds,
}

impl BenchmarkFunction {
    pub fn new(id: BenchmarkId, dim: usize) -> Result<Self> {
        match id.fixed_dim() {
            Some(fixed) if fixed != dim => {
                return Err(DoeError::InvalidArgument(format!("{id} is only defined for dim = {fixed}")))
            }
            None if dim < 2 => {
                return Err(DoeError::InvalidArgument(format!("{id} needs dim >= 2")))
            }
            _ => {}
        }
        let (lo, hi) = id.interval();
        Ok(Self {
            id,
            dim,
            bounds: Bounds::uniform(lo, hi, dim)?,
        })
    }

    pub fn id(&self) -> BenchmarkId {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> &Bounds {
        &self.bounds
    }

    /// Exact value at `x` (problem units). Points outside the domain are
    /// rejected, not clamped.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(DoeError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        for (k, &v) in x.iter().enumerate() {
            let (lo, hi) = (self.bounds.lower()[k], self.bounds.upper()[k]);
            if !(lo <= v && v <= hi) {
                return Err(DoeError::OutOfBounds {
                    coordinate: k,
                    value: v,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(self.evaluate_unchecked(x))
    }

    /// Value at a point of the unit hypercube mapped onto the domain.
    pub fn evaluate_unit(&self, u: &[f64]) -> Result<f64> {
        self.evaluate(&self.bounds.from_unit(u)?)
    }

    fn evaluate_unchecked(&self, x: &[f64]) -> f64 {
        match self.id {
            BenchmarkId::Shubert2 => x
                .iter()
                .map(|&xi| {
                    (1..=5)
                        .map(|j| {
                            let j = f64::from(j);
                            ((j + 1.0) * xi + j).cos()
                        })
                        .sum::<f64>()
                })
                .product(),
            BenchmarkId::Ackley => {
                let d = x.len() as f64;
                let sq = x.iter().map(|v| v * v).sum::<f64>() / d;
                let cos = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
                -20.0 * (-0.2 * sq.sqrt()).exp() - cos.exp() + 20.0 + E
            }
            BenchmarkId::Rosenbrock => x
                .windows(2)
                .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
                .sum(),
            BenchmarkId::Michalewicz2 => -x
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    let i = (i + 1) as f64;
                    v.sin() * (i * v * v / PI).sin().powi(20)
                })
                .sum::<f64>(),
            BenchmarkId::Sphere => x.iter().map(|v| v * v).sum(),
            BenchmarkId::Zakharov2 => {
                let sq: f64 = x.iter().map(|v| v * v).sum();
                let lin: f64 = x
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| 0.5 * (i + 1) as f64 * v)
                    .sum();
                sq + lin.powi(2) + lin.powi(4)
            }
        }
    }
}
