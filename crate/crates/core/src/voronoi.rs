//! Monte Carlo estimate of Voronoi cell volumes inside the unit hypercube.

use rand::Rng;

use crate::design::DesignMatrix;
use crate::error::{DoeError, Result};
use crate::metrics::squared_distance;
use crate::rng;

/// Fraction of the unit hypercube closest to each generator.
///
/// Draws `probes` uniform points and assigns each to its nearest design
/// point, ties going to the lowest index.
pub fn voronoi_cell_areas(design: &DesignMatrix, probes: usize, seed: u64) -> Result<Vec<f64>> {
    if design.is_empty() {
        return Err(DoeError::InvalidArgument("Voronoi cells need at least one generator".into()));
    }
    if probes == 0 {
        return Err(DoeError::InvalidArgument("probes must be positive".into()));
    }
    let d = design.dim();
    let mut rng = rng::stream(seed, 0);
    let mut counts = vec![0usize; design.size()];
    let mut probe = vec![0.0; d];
    for _ in 0..probes {
        for x in probe.iter_mut() {
            *x = rng.random::<f64>();
        }
        let mut best = 0;
        let mut best_sq = f64::INFINITY;
        for (i, p) in design.points().enumerate() {
            let s = squared_distance(p, &probe);
            if s < best_sq {
                best_sq = s;
                best = i;
            }
        }
        counts[best] += 1;
    }
    let total = probes as f64;
    Ok(counts.into_iter().map(|c| c as f64 / total).collect())
}

/// Cell shading normalised between the largest and smallest cell:
/// `(max − a)/(max − min)`. Defined as 0 everywhere when all cells are equal.
pub fn darkness(areas: &[f64]) -> Vec<f64> {
    let max = areas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = areas.iter().copied().fold(f64::INFINITY, f64::min);
    let range = max - min;
    areas
        .iter()
        .map(|&a| if range > 0.0 { (max - a) / range } else { 0.0 })
        .collect()
}
