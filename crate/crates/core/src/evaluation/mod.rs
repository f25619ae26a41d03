//! Error metrics, cross-validation and the benchmark experiment runner.

mod config;
mod experiment;

use rand::seq::SliceRandom;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::design::DesignMatrix;
use crate::error::{DoeError, Result};
use crate::metamodels::{MetamodelConfig, TrainingSet};
use crate::rng;

pub use config::ExperimentConfig;
pub use experiment::{
    run_experiment, AggregateRow, ExperimentRecord, ExperimentResult, AGGREGATE_HEADER, RAW_HEADER,
};

/// Root mean square error between paired lists.
pub fn rmse(truth: &[f64], predicted: &[f64]) -> Result<f64> {
    if truth.len() != predicted.len() {
        return Err(DoeError::LengthMismatch {
            left: truth.len(),
            right: predicted.len(),
        });
    }
    if truth.is_empty() {
        return Err(DoeError::InvalidArgument("RMSE of empty lists".into()));
    }
    let sse: f64 = truth.iter().zip(predicted).map(|(t, p)| (t - p).powi(2)).sum();
    Ok((sse / truth.len() as f64).sqrt())
}

/// Mean and half-width of the two-sided Student-t interval at `level`.
/// A single value gives half-width 0.
pub fn aggregate_ci(values: &[f64], level: f64) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(DoeError::InvalidArgument("confidence interval of no values".into()));
    }
    if !(0.0 < level && level < 1.0) {
        return Err(DoeError::InvalidArgument(format!("confidence level must lie in (0, 1), got {level}")));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() == 1 {
        return Ok((mean, 0.0));
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let t = t_quantile(0.5 + level / 2.0, n - 1.0);
    Ok((mean, t * (var / n).sqrt()))
}

/// Quantile of Student's t distribution with `dof` degrees of freedom.
pub fn t_quantile(p: f64, dof: f64) -> f64 {
    StudentsT::new(0.0, 1.0, dof)
        .expect("positive degrees of freedom")
        .inverse_cdf(p)
}

/// Shuffled partition of `0..n` into `k` folds whose sizes differ by at
/// most one. Each fold lists its indices in increasing order.
pub fn cv_folds(n: usize, k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 || n < k {
        return Err(DoeError::InvalidArgument(format!(
            "cross-validation needs n >= k >= 2 (n = {n}, k = {k})"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng::stream(seed, 0));
    let mut folds = vec![Vec::new(); k];
    for (pos, &i) in order.iter().enumerate() {
        folds[pos % k].push(i);
    }
    for f in &mut folds {
        f.sort_unstable();
    }
    Ok(folds)
}

/// k-fold cross-validated RMSE: the square root of the mean over folds of
/// the held-out mean squared error. With `k = n` this is leave-one-out.
pub fn cv_rmse(train: &TrainingSet, metamodel: &MetamodelConfig, k: usize, seed: u64) -> Result<f64> {
    let n = train.len();
    let folds = cv_folds(n, k, seed)?;
    let d = train.inputs().dim();
    let mut total = 0.0;
    for fold in &folds {
        let mut held = vec![false; n];
        for &i in fold {
            held[i] = true;
        }
        let mut data = Vec::with_capacity((n - fold.len()) * d);
        let mut y = Vec::with_capacity(n - fold.len());
        for i in (0..n).filter(|&i| !held[i]) {
            data.extend_from_slice(train.inputs().point(i));
            y.push(train.responses()[i]);
        }
        let model = metamodel.fit(&TrainingSet::new(DesignMatrix::from_flat(d, data)?, y)?)?;
        let truth: Vec<f64> = fold.iter().map(|&i| train.responses()[i]).collect();
        let pred: Vec<f64> = fold.iter().map(|&i| model.predict(train.inputs().point(i))).collect();
        total += rmse(&truth, &pred)?.powi(2);
    }
    Ok((total / k as f64).sqrt())
}
