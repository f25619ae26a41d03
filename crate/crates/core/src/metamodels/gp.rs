//! Gaussian process regression (Kriging) with a rational quadratic kernel
//!
//! `k(r) = σ² (1 + r² / (2 a ℓ²))^{-a}`
//!
//! Responses are standardised before fitting. The length-scale `ℓ` and
//! mixture exponent `a` are chosen by maximising the log marginal likelihood
//! over a fixed grid; `σ²` stays at 1 on the standardised scale. Each grid
//! point is factorised with the smallest diagonal jitter (starting at 1e-10,
//! ×10 per attempt, at most 1e-4) that makes the covariance positive
//! definite.

use std::f64::consts::PI;

use nalgebra::{Cholesky, DMatrix, DVector};

use super::{Standardizer, TrainingSet};
use crate::error::{DoeError, Result};
use crate::metrics::squared_distance;

#[derive(Debug, Clone, PartialEq)]
pub struct GpConfig {
    pub length_scales: Vec<f64>,
    pub mixtures: Vec<f64>,
    pub signal_variance: f64,
    pub jitter_start: f64,
    pub jitter_max: f64,
}

impl Default for GpConfig {
    fn default() -> Self {
        Self {
            length_scales: vec![0.05, 0.1, 0.2, 0.5, 1.0, 2.0],
            mixtures: vec![0.5, 1.0, 2.0, 5.0],
            signal_variance: 1.0,
            jitter_start: 1e-10,
            jitter_max: 1e-4,
        }
    }
}

/// Rational quadratic kernel parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalQuadratic {
    pub signal_variance: f64,
    pub length_scale: f64,
    pub mixture: f64,
}

impl RationalQuadratic {
    #[inline]
    pub fn eval_sq(&self, r2: f64) -> f64 {
        let base = 1.0 + r2 / (2.0 * self.mixture * self.length_scale * self.length_scale);
        self.signal_variance * base.powf(-self.mixture)
    }
}

/// Log marginal likelihood of one evaluated grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub length_scale: f64,
    pub mixture: f64,
    /// `None` when no jitter up to the maximum made the covariance factorable.
    pub log_likelihood: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct GpModel {
    kernel: RationalQuadratic,
    jitter: f64,
    log_likelihood: f64,
    inputs: Vec<f64>,
    dim: usize,
    weights: Vec<f64>,
    standardizer: Standardizer,
    grid: Vec<GridPoint>,
}

struct Factorised {
    chol: Cholesky<f64, nalgebra::Dyn>,
    jitter: f64,
}

fn covariance(inputs: &[f64], dim: usize, kernel: &RationalQuadratic) -> DMatrix<f64> {
    let n = inputs.len() / dim;
    let mut k = DMatrix::zeros(n, n);
    for i in 0..n {
        let a = &inputs[i * dim..(i + 1) * dim];
        k[(i, i)] = kernel.signal_variance;
        for j in (i + 1)..n {
            let v = kernel.eval_sq(squared_distance(a, &inputs[j * dim..(j + 1) * dim]));
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    k
}

fn factorise(k: &DMatrix<f64>, config: &GpConfig) -> Option<Factorised> {
    let mut jitter = config.jitter_start;
    loop {
        let mut kj = k.clone();
        for i in 0..kj.nrows() {
            kj[(i, i)] += jitter;
        }
        if let Some(chol) = Cholesky::new(kj) {
            return Some(Factorised { chol, jitter });
        }
        jitter *= 10.0;
        if jitter == 0.0 || jitter > config.jitter_max * (1.0 + 1e-9) {
            return None;
        }
    }
}

fn log_likelihood(f: &Factorised, y: &DVector<f64>) -> (f64, DVector<f64>) {
    let alpha = f.chol.solve(y);
    let n = y.len() as f64;
    let log_det_half: f64 = f.chol.l_dirty().diagonal().iter().map(|v| v.ln()).sum();
    let ll = -0.5 * y.dot(&alpha) - log_det_half - 0.5 * n * (2.0 * PI).ln();
    (ll, alpha)
}

impl GpModel {
    pub fn fit(train: &TrainingSet, config: &GpConfig) -> Result<Self> {
        let train = train.canonical();
        let n = train.len();
        if n < 2 {
            return Err(DoeError::Fit("a GP needs at least 2 training points".into()));
        }
        if config.length_scales.is_empty() || config.mixtures.is_empty() {
            return Err(DoeError::Fit("empty GP hyperparameter grid".into()));
        }
        let dim = train.inputs().dim();
        let inputs = train.inputs().as_flat().to_vec();
        let standardizer = Standardizer::fit(train.responses());
        let y = DVector::from_iterator(n, train.responses().iter().map(|&v| standardizer.forward(v)));

        let mut grid = Vec::with_capacity(config.length_scales.len() * config.mixtures.len());
        let mut best: Option<(RationalQuadratic, f64, f64, DVector<f64>)> = None;
        for &length_scale in &config.length_scales {
            for &mixture in &config.mixtures {
                let kernel = RationalQuadratic {
                    signal_variance: config.signal_variance,
                    length_scale,
                    mixture,
                };
                let k = covariance(&inputs, dim, &kernel);
                let result = factorise(&k, config).map(|f| {
                    let (ll, alpha) = log_likelihood(&f, &y);
                    (ll, alpha, f.jitter)
                });
                let ll = result.as_ref().map(|r| r.0).filter(|v| v.is_finite());
                grid.push(GridPoint {
                    length_scale,
                    mixture,
                    log_likelihood: ll,
                });
                if let (Some(ll), Some((_, alpha, jitter))) = (ll, result) {
                    if best.as_ref().is_none_or(|b| ll > b.1) {
                        best = Some((kernel, ll, jitter, alpha));
                    }
                }
            }
        }
        let (kernel, log_likelihood, jitter, alpha) = best.ok_or_else(|| {
            DoeError::Fit(format!(
                "covariance singular for every grid point even with jitter {:e}",
                config.jitter_max
            ))
        })?;
        Ok(Self {
            kernel,
            jitter,
            log_likelihood,
            inputs,
            dim,
            weights: alpha.iter().copied().collect(),
            standardizer,
            grid,
        })
    }

    /// Posterior mean in the original response units.
    pub fn predict(&self, x: &[f64]) -> f64 {
        self.standardizer.inverse(self.predict_standardized(x))
    }

    /// Posterior mean in standardised units.
    pub fn predict_standardized(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        self.inputs
            .chunks_exact(self.dim)
            .zip(&self.weights)
            .map(|(xi, w)| w * self.kernel.eval_sq(squared_distance(xi, x)))
            .sum()
    }

    pub fn kernel(&self) -> RationalQuadratic {
        self.kernel
    }

    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    pub fn log_likelihood(&self) -> f64 {
        self.log_likelihood
    }

    /// Every grid point evaluated during the fit, in search order.
    pub fn grid(&self) -> &[GridPoint] {
        &self.grid
    }

    pub fn standardizer(&self) -> &Standardizer {
        &self.standardizer
    }

    pub fn describe(&self) -> String {
        format!(
            "gp(length_scale={}, mixture={}, signal_variance={}, jitter={:e})",
            self.kernel.length_scale, self.kernel.mixture, self.kernel.signal_variance, self.jitter
        )
    }
}
