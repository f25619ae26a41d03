//! Fluttering progressive Latin hypercube sampling.
//!
//! Starting from a Latin hypercube of `n0` points, each refinement doubles
//! the grid, removes the fine intervals already hit by the design on every
//! axis and fills the remaining ones with a new slice: a random bijection
//! between the free intervals of each axis. Of `slices_per_refinement · N`
//! slices (each already the most spread-out of `slice_presamples` draws)
//! the one that best preserves the maxmin distance of the grown design is
//! kept. Its points are then released one per call, always the pending point
//! with the largest crowding distance to the current design. After a full
//! slice the design is again an exact Latin hypercube of size `n0 · 2^j`.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{AdaptiveSpec, Step};
use crate::design::DesignMatrix;
use crate::error::{DoeError, Result};
use crate::metrics::{crowding_distance, is_latin_hypercube, min_pairwise_sq, nearest, occupancy};
use crate::oneshot::place_in_interval;
use crate::rng::DoeRng;

#[derive(Debug, Clone, PartialEq)]
pub struct FpPlhsState {
    base_size: usize,
    level: u32,
    released: usize,
    pending: Vec<Vec<f64>>,
}

impl FpPlhsState {
    /// Starts from `base`, which must be a Latin hypercube.
    pub fn new(base: &DesignMatrix) -> Result<Self> {
        if !is_latin_hypercube(base) {
            return Err(DoeError::InconsistentState(format!(
                "FpPLHS needs a Latin hypercube as starting design (got {} points that are not one)",
                base.size()
            )));
        }
        Ok(Self {
            base_size: base.size(),
            level: 0,
            released: base.size(),
            pending: Vec::new(),
        })
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    /// Number of refinements started so far.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Intervals per axis of the current grid, `n0 · 2^level`.
    pub fn resolution(&self) -> usize {
        self.base_size << self.level
    }

    /// Design size the state expects on the next call.
    pub fn expected_size(&self) -> usize {
        self.released
    }

    /// Slice points not yet released, in generation order.
    pub fn pending(&self) -> &[Vec<f64>] {
        &self.pending
    }

    fn refine(&mut self, design: &DesignMatrix, spec: &AdaptiveSpec, rng: &mut DoeRng) -> Result<()> {
        let n = design.size();
        let d = design.dim();
        if n != self.resolution() {
            return Err(DoeError::InconsistentState(format!(
                "refinement expected {} points, design has {n}",
                self.resolution()
            )));
        }
        let m = 2 * n;
        let free: Vec<Vec<usize>> = occupancy(design, m)
            .into_iter()
            .map(|axis| (0..m).filter(|&q| !axis[q]).collect())
            .collect();
        if let Some(k) = free.iter().position(|f| f.len() != n) {
            return Err(DoeError::InconsistentState(format!(
                "axis {k} has {} free intervals out of {m}; the design is not a Latin hypercube at resolution {n}",
                free[k].len()
            )));
        }

        let slices = spec.slices_per_refinement * n;
        let mut best: Option<(DesignMatrix, f64)> = None;
        for _ in 0..slices {
            let slice = spread_slice(&free, n, d, m, spec.slice_presamples, rng);
            let score = added_pair_score(design, &slice);
            if best.as_ref().is_none_or(|(_, b)| score > *b) {
                best = Some((slice, score));
            }
        }
        let (slice, _) = best.expect("at least one slice is generated");
        self.pending = slice.points().map(<[f64]>::to_vec).collect();
        self.level += 1;
        Ok(())
    }
}

/// One random slice: an independent bijection between the `n` points and
/// the free intervals on every axis, uniform inside each interval.
fn random_slice(free: &[Vec<usize>], n: usize, d: usize, m: usize, rng: &mut DoeRng) -> DesignMatrix {
    let mut data = vec![0.0; n * d];
    for (k, axis) in free.iter().enumerate() {
        let mut perm = axis.clone();
        perm.shuffle(rng);
        for (i, &q) in perm.iter().enumerate() {
            data[i * d + k] = place_in_interval(q, m, rng.random::<f64>());
        }
    }
    DesignMatrix::from_flat(d, data).expect("slice coordinates lie in [0, 1]")
}

/// Best of `presamples` random slices by their own maxmin distance.
fn spread_slice(free: &[Vec<usize>], n: usize, d: usize, m: usize, presamples: usize, rng: &mut DoeRng) -> DesignMatrix {
    let mut best: Option<(DesignMatrix, f64)> = None;
    for _ in 0..presamples {
        let slice = random_slice(free, n, d, m, rng);
        let score = if n < 2 { f64::INFINITY } else { min_pairwise_sq(&slice, 0.0) };
        if best.as_ref().is_none_or(|(_, b)| score > *b) {
            best = Some((slice, score));
        }
    }
    best.expect("presamples >= 1").0
}

/// Smallest squared distance over the pairs the slice adds to the design:
/// slice-slice and slice-design. Pairs inside the existing design are the
/// same for every slice.
pub(crate) fn added_pair_score(design: &DesignMatrix, slice: &DesignMatrix) -> f64 {
    let inner = if slice.size() < 2 {
        f64::INFINITY
    } else {
        min_pairwise_sq(slice, 0.0)
    };
    slice
        .points()
        .map(|p| nearest(design, p).0)
        .fold(inner, f64::min)
}

/// Releases the next point, refining the grid first when no slice points
/// are pending.
pub fn fpplhs_next(state: &mut FpPlhsState, design: &DesignMatrix, spec: &AdaptiveSpec, rng: &mut DoeRng) -> Result<Step> {
    if design.size() != state.released {
        return Err(DoeError::InconsistentState(format!(
            "FpPLHS state expects a design of {} points, got {}",
            state.released,
            design.size()
        )));
    }
    if state.pending.is_empty() {
        state.refine(design, spec, rng)?;
    }
    let mut pick = 0;
    let mut pick_cdm = f64::NEG_INFINITY;
    for (i, p) in state.pending.iter().enumerate() {
        let cdm = crowding_distance(design, p);
        if cdm > pick_cdm {
            pick = i;
            pick_cdm = cdm;
        }
    }
    let point = state.pending.remove(pick);
    state.released += 1;
    Ok(Step::plain(point))
}
