//! One-shot designs: a random Latin hypercube against the space-filling
//! variant that keeps the best of a pool of random hypercubes.
//!
//! ```bash
//! cargo run --release --example latin_hypercube
//! ```

use adaptive_doe::error::Result;
use adaptive_doe::metrics::MetricReport;
use adaptive_doe::oneshot::{default_pool, random_lhs, sf_lhs};

pub fn run_example() -> Result<()> {
    let (n, d) = (20, 3);
    let plain = random_lhs(n, d, 1)?;
    let filled = sf_lhs(n, d, 1, default_pool(d))?;

    for (name, design) in [("random LHS", &plain), ("sf-LHS", &filled)] {
        let m = MetricReport::of(design, 50);
        println!(
            "{name:>10}: intersite {:.4}  projected {:.4}  lhs fraction {}",
            m.intersite.unwrap_or(f64::NAN),
            m.projected.unwrap_or(f64::NAN),
            m.lhs_fraction
        );
    }
    println!("\nfirst rows of the sf-LHS design:");
    for line in filled.to_csv_string().lines().take(5) {
        println!("  {line}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
