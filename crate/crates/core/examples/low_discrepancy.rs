//! Halton and Sobol points. Both skip the origin; a sequence can be resumed
//! where it stopped, so any prefix of a long design is itself a valid design.
//!
//! ```bash
//! cargo run --release --example low_discrepancy
//! ```

use adaptive_doe::error::Result;
use adaptive_doe::lowdiscrepancy::{sequence_design, SequenceKind, SequenceState};
use adaptive_doe::metrics::{intersite_distance, projected_distance};

pub fn run_example() -> Result<()> {
    let mut sobol = SequenceState::sobol(2)?;
    println!("first Sobol points in 2-D:");
    for _ in 0..4 {
        println!("  {:?}", sobol.next_point());
    }

    // the same points again, in one batch
    let batch = sequence_design(SequenceKind::Sobol, 2, 4)?;
    let mut resumed = SequenceState::sobol(2)?;
    resumed.skip(3);
    assert_eq!(batch.point(3), resumed.next_point().as_slice());

    for kind in [SequenceKind::Halton, SequenceKind::Sobol] {
        let design = sequence_design(kind, 5, 50)?;
        println!(
            "{kind:>6} d=5 n=50: intersite {:.4}  projected {:.5}",
            intersite_distance(&design)?,
            projected_distance(&design)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
