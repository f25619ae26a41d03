use super::monte_carlo::candidate_distances;
use super::{check_inputs, select_from_draws, AdaptiveSpec, Step};
use crate::design::DesignMatrix;
use crate::error::Result;
use crate::metrics::{interval_index, occupancy};
use crate::rng::DoeRng;

/// Two-stage greedy choice.
///
/// First keep every candidate whose addition gives the largest LHS fraction
/// of the enlarged design (grid of `n + 1` intervals per axis), then return
/// the one among them farthest from the design in Euclidean distance. Ties
/// go to the lowest index.
pub fn mqplhs_select(design: &DesignMatrix, candidates: &DesignMatrix) -> Result<Option<usize>> {
    check_inputs(design, candidates)?;
    let m = design.size() + 1;
    let occ = occupancy(design, m);
    let dist = candidate_distances(design, candidates);

    // the LHS fraction differs between candidates only by the number of
    // empty intervals they hit, so compare that integer count
    let gain = |c: &[f64]| -> usize {
        c.iter()
            .enumerate()
            .filter(|&(k, &x)| !occ[k][interval_index(x, m)])
            .count()
    };

    let mut best: Option<(usize, usize, f64)> = None;
    for (i, c) in candidates.points().enumerate() {
        let Some((sq, _)) = dist[i] else { continue };
        let g = gain(c);
        let better = match best {
            None => true,
            Some((_, bg, bsq)) => g > bg || (g == bg && sq > bsq),
        };
        if better {
            best = Some((i, g, sq));
        }
    }
    Ok(best.map(|(i, _, _)| i))
}

pub fn mqplhs_next(design: &DesignMatrix, spec: &AdaptiveSpec, rng: &mut DoeRng) -> Result<Step> {
    let (candidates, index) = select_from_draws(design, spec, rng, |c| mqplhs_select(design, c))?;
    Ok(Step::plain(candidates.point(index).to_vec()))
}
