//! Fit a Gaussian process and a support vector regression to the same
//! samples and score them on a held-out cloud and by cross-validation.
//!
//! ```bash
//! cargo run --release --example surrogate_models
//! ```

use adaptive_doe::benchmarks::{BenchmarkFunction, BenchmarkId};
use adaptive_doe::error::Result;
use adaptive_doe::evaluation::{cv_rmse, rmse};
use adaptive_doe::metamodels::{MetamodelConfig, MetamodelKind, TrainingSet};
use adaptive_doe::oneshot::{default_pool, random_lhs, sf_lhs};

pub fn run_example() -> Result<()> {
    let f = BenchmarkFunction::new(BenchmarkId::Rosenbrock, 2)?;
    let x = sf_lhs(25, 2, 4, default_pool(2))?;
    let y = x.points().map(|p| f.evaluate_unit(p)).collect::<Result<Vec<_>>>()?;
    let train = TrainingSet::new(x, y)?;

    let cloud = random_lhs(2000, 2, 99)?;
    let truth = cloud.points().map(|p| f.evaluate_unit(p)).collect::<Result<Vec<_>>>()?;

    for kind in [MetamodelKind::Gp, MetamodelKind::Svr] {
        let config = MetamodelConfig::new(kind);
        let model = config.fit(&train)?;
        let test = rmse(&truth, &model.predict_many(&cloud))?;
        let cv = cv_rmse(&train, &config, 5, 0)?;
        println!("{}", model.describe());
        println!("  test RMSE {test:.3}  5-fold CV RMSE {cv:.3}\n");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
