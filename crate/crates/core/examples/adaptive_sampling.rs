//! Grow one starting design with each sequential sampler and compare the
//! space-filling quality of the results.
//!
//! ```bash
//! cargo run --release --example adaptive_sampling
//! ```

use adaptive_doe::adaptive::{AdaptiveMethod, AdaptiveSampler, AdaptiveSpec, AlphaMode};
use adaptive_doe::error::Result;
use adaptive_doe::metrics::{intersite_distance, lhs_fraction, projected_distance};
use adaptive_doe::oneshot::{default_pool, sf_lhs};

pub fn run_example() -> Result<()> {
    let d = 3;
    let start = sf_lhs(10, d, 7, default_pool(d))?;

    for method in [AdaptiveMethod::Mip, AdaptiveMethod::Mipt, AdaptiveMethod::MqPlhs] {
        let mut design = start.clone();
        let mut sampler = AdaptiveSampler::new(AdaptiveSpec::new(method, 11))?;
        sampler.extend(&mut design, 30)?;
        println!(
            "{method:>7}: n={} intersite {:.4} projected {:.4} lhs fraction {:.3}",
            design.size(),
            intersite_distance(&design)?,
            projected_distance(&design)?,
            lhs_fraction(&design)
        );
    }

    // a fixed tolerance instead of the automatic one; each step reports its α
    let mut design = start.clone();
    let spec = AdaptiveSpec::new(AdaptiveMethod::Mipt, 11).with_alpha(AlphaMode::Fixed(0.5));
    let mut sampler = AdaptiveSampler::new(spec)?;
    let steps = sampler.extend(&mut design, 15)?;
    for s in &steps {
        println!("  alpha {:?} fallback {} -> {:?}", s.alpha, s.fallback, s.point);
    }
    println!("fallbacks: {}", sampler.fallbacks());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
