//! A small RMSE campaign: every sampler grows designs on a benchmark
//! function, a metamodel is refitted at each checkpoint and the errors are
//! averaged over repetitions with a 95 % confidence interval.
//!
//! ```bash
//! cargo run --release --example benchmark_campaign
//! ```
//!
//! The same campaign can be run from a config file with
//! `doe benchmark --config crates/core/examples/campaign.conf`.

use adaptive_doe::benchmarks::BenchmarkId;
use adaptive_doe::error::Result;
use adaptive_doe::evaluation::{run_experiment, ExperimentConfig};
use adaptive_doe::metamodels::MetamodelKind;
use adaptive_doe::sampler::Method;

pub fn run_example() -> Result<()> {
    let mut config = ExperimentConfig::new(
        BenchmarkId::Zakharov2,
        2,
        vec![Method::Mipt, Method::MqPlhs, Method::Sobol, Method::SfLhs],
    );
    config.metamodel.kind = MetamodelKind::Gp;
    config.repetitions = 3;
    config.max_samples = 30;
    config.test_points = 2000;

    let result = run_experiment(&config)?;
    for row in result.aggregates.iter().filter(|r| r.n_samples % 10 == 0) {
        match row.mean {
            Some(mean) => println!(
                "{:>6} n={:>2}: RMSE {mean:>8.3} ± {:.3}",
                row.method, row.n_samples, row.half_width
            ),
            None => println!("{:>6} n={:>2}: every fit failed", row.method, row.n_samples),
        }
    }
    println!("\n{}", result.metadata());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
