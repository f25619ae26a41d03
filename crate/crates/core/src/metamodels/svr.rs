//! ε-insensitive support vector regression with an RBF kernel
//! `k(x, x') = exp(-γ‖x − x'‖²)`.
//!
//! The dual is solved by sequential minimal optimisation over the usual
//! `2n` variables (`β_i` and `β*_i` stacked, labels `+1` and `−1`) with
//! second-order working-set selection. Training stops when the maximal KKT
//! violation drops below the tolerance.

use super::{Standardizer, TrainingSet};
use crate::error::{DoeError, Result};
use crate::metrics::squared_distance;

const TAU: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SvrConfig {
    pub c: f64,
    /// Tube half-width in standardised response units.
    pub epsilon: f64,
    /// RBF width; `None` means `1/dim`.
    pub gamma: Option<f64>,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SvrConfig {
    fn default() -> Self {
        Self {
            c: 100.0,
            epsilon: 0.01,
            gamma: None,
            tolerance: 1e-3,
            max_iterations: 10_000_000,
        }
    }
}

impl SvrConfig {
    fn validate(&self) -> Result<()> {
        let ok = self.c > 0.0
            && self.epsilon >= 0.0
            && self.tolerance > 0.0
            && self.gamma.is_none_or(|g| g > 0.0)
            && self.c.is_finite()
            && self.epsilon.is_finite();
        if ok {
            Ok(())
        } else {
            Err(DoeError::InvalidArgument(format!(
                "invalid SVR settings: C={}, epsilon={}, gamma={:?}, tolerance={}",
                self.c, self.epsilon, self.gamma, self.tolerance
            )))
        }
    }
}

/// Solver history, one entry per SMO iteration.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SvrTrace {
    /// Dual objective (maximisation form) after each update.
    pub objective: Vec<f64>,
    /// Maximal KKT violation seen before each update.
    pub violation: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct SvrModel {
    c: f64,
    epsilon: f64,
    gamma: f64,
    dim: usize,
    inputs: Vec<f64>,
    coefficients: Vec<f64>,
    bias: f64,
    kkt_residual: f64,
    iterations: usize,
    standardizer: Standardizer,
}

struct Solver<'a> {
    n: usize,
    kernel: &'a [f64],
    c: f64,
    linear: Vec<f64>,
    alpha: Vec<f64>,
    grad: Vec<f64>,
}

impl Solver<'_> {
    #[inline]
    fn label(&self, t: usize) -> f64 {
        if t < self.n { 1.0 } else { -1.0 }
    }

    /// `Q_st = y_s y_t K(s mod n, t mod n)`
    #[inline]
    fn q(&self, s: usize, t: usize) -> f64 {
        self.label(s) * self.label(t) * self.kernel[(s % self.n) * self.n + t % self.n]
    }

    #[inline]
    fn at_upper(&self, t: usize) -> bool {
        self.alpha[t] >= self.c
    }

    #[inline]
    fn at_lower(&self, t: usize) -> bool {
        self.alpha[t] <= 0.0
    }

    /// Returns the working pair and the current violation `Gmax + Gmax2`.
    fn select(&self) -> (Option<(usize, usize)>, f64) {
        let l = 2 * self.n;
        let mut gmax = f64::NEG_INFINITY;
        let mut i = None;
        for t in 0..l {
            let v = if self.label(t) > 0.0 {
                (!self.at_upper(t)).then(|| -self.grad[t])
            } else {
                (!self.at_lower(t)).then(|| self.grad[t])
            };
            if let Some(v) = v {
                if v >= gmax {
                    gmax = v;
                    i = Some(t);
                }
            }
        }
        let Some(i) = i else {
            return (None, 0.0);
        };
        let yi = self.label(i);
        let qii = self.q(i, i);
        let mut gmax2 = f64::NEG_INFINITY;
        let mut j = None;
        let mut best = f64::INFINITY;
        for t in 0..l {
            let yt = self.label(t);
            let (eligible, grad_diff, g2, sign) = if yt > 0.0 {
                (!self.at_lower(t), gmax + self.grad[t], self.grad[t], -1.0)
            } else {
                (!self.at_upper(t), gmax - self.grad[t], -self.grad[t], 1.0)
            };
            if !eligible {
                continue;
            }
            gmax2 = gmax2.max(g2);
            if grad_diff > 0.0 {
                let mut quad = qii + self.q(t, t) + sign * 2.0 * yi * self.q(i, t);
                if quad <= 0.0 {
                    quad = TAU;
                }
                let obj = -(grad_diff * grad_diff) / quad;
                if obj <= best {
                    best = obj;
                    j = Some(t);
                }
            }
        }
        let violation = gmax + gmax2;
        (j.map(|j| (i, j)), violation)
    }

    fn update(&mut self, i: usize, j: usize) {
        let c = self.c;
        let (old_i, old_j) = (self.alpha[i], self.alpha[j]);
        let qij = self.q(i, j);
        let (qii, qjj) = (self.q(i, i), self.q(j, j));
        let (mut ai, mut aj) = (old_i, old_j);
        if self.label(i) != self.label(j) {
            let mut quad = qii + qjj + 2.0 * qij;
            if quad <= 0.0 {
                quad = TAU;
            }
            let delta = (-self.grad[i] - self.grad[j]) / quad;
            let diff = ai - aj;
            ai += delta;
            aj += delta;
            if diff > 0.0 {
                if aj < 0.0 {
                    aj = 0.0;
                    ai = diff;
                }
            } else if ai < 0.0 {
                ai = 0.0;
                aj = -diff;
            }
            if diff > 0.0 {
                if ai > c {
                    ai = c;
                    aj = c - diff;
                }
            } else if aj > c {
                aj = c;
                ai = c + diff;
            }
        } else {
            let mut quad = qii + qjj - 2.0 * qij;
            if quad <= 0.0 {
                quad = TAU;
            }
            let delta = (self.grad[i] - self.grad[j]) / quad;
            let sum = ai + aj;
            ai -= delta;
            aj += delta;
            if sum > c {
                if ai > c {
                    ai = c;
                    aj = sum - c;
                }
            } else if aj < 0.0 {
                aj = 0.0;
                ai = sum;
            }
            if sum > c {
                if aj > c {
                    aj = c;
                    ai = sum - c;
                }
            } else if ai < 0.0 {
                ai = 0.0;
                aj = sum;
            }
        }
        self.alpha[i] = ai;
        self.alpha[j] = aj;
        let (di, dj) = (ai - old_i, aj - old_j);
        for t in 0..2 * self.n {
            self.grad[t] += self.q(i, t) * di + self.q(j, t) * dj;
        }
    }

    /// `−(½ βᵀQβ + pᵀβ)`, which SMO never decreases.
    fn objective(&self) -> f64 {
        let s: f64 = self
            .alpha
            .iter()
            .zip(&self.grad)
            .zip(&self.linear)
            .map(|((a, g), p)| a * (g + p))
            .sum();
        -0.5 * s
    }

    fn bias(&self) -> f64 {
        let mut ub = f64::INFINITY;
        let mut lb = f64::NEG_INFINITY;
        let mut free_sum = 0.0;
        let mut free = 0usize;
        for t in 0..2 * self.n {
            let y = self.label(t);
            let yg = y * self.grad[t];
            if self.at_upper(t) {
                if y < 0.0 {
                    ub = ub.min(yg);
                } else {
                    lb = lb.max(yg);
                }
            } else if self.at_lower(t) {
                if y > 0.0 {
                    ub = ub.min(yg);
                } else {
                    lb = lb.max(yg);
                }
            } else {
                free += 1;
                free_sum += yg;
            }
        }
        let rho = if free > 0 { free_sum / free as f64 } else { (ub + lb) / 2.0 };
        -rho
    }
}

fn rbf(gamma: f64, a: &[f64], b: &[f64]) -> f64 {
    (-gamma * squared_distance(a, b)).exp()
}

impl SvrModel {
    pub fn fit(train: &TrainingSet, config: &SvrConfig) -> Result<Self> {
        Self::fit_inner(train, config, None)
    }

    /// Same as [`fit`](Self::fit) but also returns the solver history.
    pub fn fit_traced(train: &TrainingSet, config: &SvrConfig) -> Result<(Self, SvrTrace)> {
        let mut trace = SvrTrace::default();
        let model = Self::fit_inner(train, config, Some(&mut trace))?;
        Ok((model, trace))
    }

    fn fit_inner(train: &TrainingSet, config: &SvrConfig, mut trace: Option<&mut SvrTrace>) -> Result<Self> {
        config.validate()?;
        let train = train.canonical();
        let n = train.len();
        if n < 2 {
            return Err(DoeError::Fit("an SVR needs at least 2 training points".into()));
        }
        let dim = train.inputs().dim();
        let gamma = config.gamma.unwrap_or(1.0 / dim as f64);
        let standardizer = Standardizer::fit(train.responses());
        let z: Vec<f64> = train.responses().iter().map(|&v| standardizer.forward(v)).collect();
        let inputs = train.inputs().as_flat().to_vec();

        let mut kernel = vec![0.0; n * n];
        for a in 0..n {
            for b in a..n {
                let v = rbf(gamma, train.inputs().point(a), train.inputs().point(b));
                kernel[a * n + b] = v;
                kernel[b * n + a] = v;
            }
        }
        let linear: Vec<f64> = (0..2 * n)
            .map(|t| if t < n { config.epsilon - z[t] } else { config.epsilon + z[t - n] })
            .collect();
        let mut solver = Solver {
            n,
            kernel: &kernel,
            c: config.c,
            grad: linear.clone(),
            linear,
            alpha: vec![0.0; 2 * n],
        };

        let mut iterations = 0;
        let residual = loop {
            let (pair, violation) = solver.select();
            let Some((i, j)) = pair.filter(|_| violation >= config.tolerance) else {
                break violation.max(0.0);
            };
            if iterations >= config.max_iterations {
                return Err(DoeError::NoConvergence {
                    iterations,
                    residual: violation,
                });
            }
            solver.update(i, j);
            iterations += 1;
            if let Some(t) = trace.as_deref_mut() {
                t.violation.push(violation);
                t.objective.push(solver.objective());
            }
        };

        let coefficients = (0..n).map(|t| solver.alpha[t] - solver.alpha[t + n]).collect();
        Ok(Self {
            c: config.c,
            epsilon: config.epsilon,
            gamma,
            dim,
            inputs,
            coefficients,
            bias: solver.bias(),
            kkt_residual: residual,
            iterations,
            standardizer,
        })
    }

    pub fn predict(&self, x: &[f64]) -> f64 {
        self.standardizer.inverse(self.predict_standardized(x))
    }

    pub fn predict_standardized(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        self.inputs
            .chunks_exact(self.dim)
            .zip(&self.coefficients)
            .filter(|(_, c)| **c != 0.0)
            .map(|(xi, c)| c * rbf(self.gamma, xi, x))
            .sum::<f64>()
            + self.bias
    }

    /// `β_i − β*_i` per training row (canonical row order).
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Maximal KKT violation when the solver stopped.
    pub fn kkt_residual(&self) -> f64 {
        self.kkt_residual
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn standardizer(&self) -> &Standardizer {
        &self.standardizer
    }

    pub fn describe(&self) -> String {
        let sv = self.coefficients.iter().filter(|c| **c != 0.0).count();
        format!(
            "svr(C={}, epsilon={}, gamma={}, support_vectors={sv}, iterations={})",
            self.c, self.epsilon, self.gamma, self.iterations
        )
    }
}
