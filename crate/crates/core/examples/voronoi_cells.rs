//! Estimate how much of the unit square each design point "owns". Uneven
//! cells reveal clustered points and holes.
//!
//! ```bash
//! cargo run --release --example voronoi_cells
//! ```

use adaptive_doe::error::Result;
use adaptive_doe::lowdiscrepancy::{sequence_design, SequenceKind};
use adaptive_doe::oneshot::random_lhs;
use adaptive_doe::voronoi::{darkness, voronoi_cell_areas};

pub fn run_example() -> Result<()> {
    let designs = [
        ("random LHS", random_lhs(16, 2, 9)?),
        ("Sobol", sequence_design(SequenceKind::Sobol, 2, 16)?),
    ];
    for (name, design) in designs {
        let areas = voronoi_cell_areas(&design, 20_000, 1)?;
        let shade = darkness(&areas);
        let (lo, hi) = areas
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), &a| (lo.min(a), hi.max(a)));
        let darkest = shade.iter().position(|&s| s == 1.0).unwrap_or(0);
        println!(
            "{name:>10}: cell areas in [{lo:.4}, {hi:.4}], smallest cell around {:?}",
            design.point(darkest)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
