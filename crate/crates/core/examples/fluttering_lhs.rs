//! FpPLHS: the design stays a Latin hypercube every time its size doubles.
//!
//! ```bash
//! cargo run --release --example fluttering_lhs
//! ```

use adaptive_doe::adaptive::{AdaptiveMethod, AdaptiveSampler, AdaptiveSpec};
use adaptive_doe::error::Result;
use adaptive_doe::metrics::{is_latin_hypercube, lhs_fraction};
use adaptive_doe::oneshot::{default_pool, sf_lhs};

pub fn run_example() -> Result<()> {
    let d = 4;
    let mut design = sf_lhs(6, d, 3, default_pool(d))?;
    let mut sampler = AdaptiveSampler::new(AdaptiveSpec::new(AdaptiveMethod::FpPlhs, 5))?;

    for target in [12, 24, 48] {
        sampler.extend(&mut design, target)?;
        let state = sampler.fpplhs_state().expect("created on the first step");
        println!(
            "n={target:>2} level {} lhs fraction {:.3} latin {}",
            state.level(),
            lhs_fraction(&design),
            is_latin_hypercube(&design)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
