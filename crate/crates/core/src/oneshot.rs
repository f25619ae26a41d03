//! One-stage designs: random Latin hypercubes, best-of-pool space-filling
//! Latin hypercubes (sf-LHS) and externally optimized designs read from file.

use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::design::DesignMatrix;
use crate::error::{DoeError, Result};
use crate::metrics::{interval_index, min_pairwise_sq};
use crate::rng;

/// A coordinate uniformly placed inside interval `q` of an `m`-interval grid.
/// `u` is a uniform draw in `[0, 1)`.
pub(crate) fn place_in_interval(q: usize, m: usize, u: f64) -> f64 {
    let x = (q as f64 + u) / m as f64;
    if x <= 1.0 && interval_index(x, m) == q {
        x
    } else {
        // rounding pushed the draw across a boundary
        (q as f64 + 0.5) / m as f64
    }
}

pub(crate) fn random_lhs_with<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Vec<f64> {
    let mut data = vec![0.0; n * d];
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..d {
        perm.shuffle(rng);
        for (i, &q) in perm.iter().enumerate() {
            data[i * d + k] = place_in_interval(q, n, rng.random::<f64>());
        }
    }
    data
}

/// A random Latin hypercube of `n` points in `d` dimensions.
///
/// Every axis gets an independent uniform permutation of the `n` intervals,
/// with a uniform position inside each interval. Uses sub-stream 0 of `seed`.
pub fn random_lhs(n: usize, d: usize, seed: u64) -> Result<DesignMatrix> {
    check_size(n, d)?;
    let mut rng = rng::stream(seed, 0);
    DesignMatrix::from_flat(d, random_lhs_with(n, d, &mut rng))
}

fn candidate(n: usize, d: usize, seed: u64, index: usize) -> Vec<f64> {
    random_lhs_with(n, d, &mut rng::stream(seed, index as u64))
}

/// Best of `pool` random Latin hypercubes by the maxmin criterion.
///
/// Candidate `i` is drawn from sub-stream `i` of `seed`, so candidate 0 is
/// exactly `random_lhs(n, d, seed)` and growing the pool only appends
/// candidates. Ties go to the lowest candidate index.
pub fn sf_lhs(n: usize, d: usize, seed: u64, pool: usize) -> Result<DesignMatrix> {
    check_size(n, d)?;
    if pool == 0 {
        return Err(DoeError::InvalidArgument("sf-LHS pool must be at least 1".into()));
    }
    if n < 2 || pool == 1 {
        return DesignMatrix::from_flat(d, candidate(n, d, seed, 0));
    }
    let (best, _) = best_candidate(n, d, seed, pool);
    DesignMatrix::from_flat(d, candidate(n, d, seed, best))
}

/// Index and squared maxmin score of the winning pool member.
pub(crate) fn best_candidate(n: usize, d: usize, seed: u64, pool: usize) -> (usize, f64) {
    let chunks = rayon::current_num_threads().max(1) * 4;
    let chunk_len = pool.div_ceil(chunks).max(1);
    (0..pool.div_ceil(chunk_len))
        .into_par_iter()
        .map(|c| {
            let start = c * chunk_len;
            let end = (start + chunk_len).min(pool);
            let mut best = (start, f64::NEG_INFINITY);
            for i in start..end {
                let design = DesignMatrix::from_flat(d, candidate(n, d, seed, i))
                    .expect("LHS coordinates lie in [0, 1]");
                // a candidate strictly below the running best can never win
                let score = min_pairwise_sq(&design, best.1);
                if score > best.1 {
                    best = (i, score);
                }
            }
            best
        })
        .reduce(
            || (usize::MAX, f64::NEG_INFINITY),
            |a, b| {
                if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                    b
                } else {
                    a
                }
            },
        )
}

/// Reads an externally optimized design (e.g. a published maximin LHD) from
/// the design file format.
pub fn load_design(path: impl AsRef<Path>) -> Result<DesignMatrix> {
    DesignMatrix::read_csv(path)
}

fn check_size(n: usize, d: usize) -> Result<()> {
    if n == 0 || d == 0 {
        Err(DoeError::InvalidArgument(format!(
            "design size and dimension must be positive (n = {n}, d = {d})"
        )))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OneShotMethod {
    RandomLhs,
    SfLhs,
    PreoptimizedFile,
}

/// Everything needed to reproduce a one-stage design.
#[derive(Debug, Clone, PartialEq)]
pub struct OneShotSpec {
    pub method: OneShotMethod,
    pub n: usize,
    pub d: usize,
    pub pool: usize,
    pub seed: u64,
    pub path: Option<PathBuf>,
}

impl OneShotSpec {
    pub fn new(method: OneShotMethod, n: usize, d: usize, seed: u64) -> Self {
        Self {
            method,
            n,
            d,
            pool: default_pool(d),
            seed,
            path: None,
        }
    }

    pub fn generate(&self) -> Result<DesignMatrix> {
        match self.method {
            OneShotMethod::RandomLhs => random_lhs(self.n, self.d, self.seed),
            OneShotMethod::SfLhs => sf_lhs(self.n, self.d, self.seed, self.pool),
            OneShotMethod::PreoptimizedFile => {
                let path = self.path.as_ref().ok_or_else(|| {
                    DoeError::InvalidArgument("pre-optimized design needs a file path".into())
                })?;
                let design = load_design(path)?;
                if design.dim() != self.d {
                    return Err(DoeError::DimensionMismatch {
                        expected: self.d,
                        found: design.dim(),
                    }
                    .in_file(path));
                }
                Ok(design)
            }
        }
    }
}

/// Default sf-LHS pool size: 1000 candidates per dimension.
pub fn default_pool(d: usize) -> usize {
    1000 * d
}
