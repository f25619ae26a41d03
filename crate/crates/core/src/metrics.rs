//! Design quality criteria: maxmin (intersite) distance, the φ_p criterion,
//! minimum projected distance, crowding distance and the Latin hypercube
//! fraction.

use crate::design::DesignMatrix;
use crate::error::{DoeError, Result};

#[inline]
pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub(crate) fn projected_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(f64::INFINITY, f64::min)
}

/// Smallest squared Euclidean distance and smallest per-coordinate gap
/// between `candidate` and any point of `design`. Both are `+inf` for an
/// empty design.
pub(crate) fn nearest(design: &DesignMatrix, candidate: &[f64]) -> (f64, f64) {
    let mut best_sq = f64::INFINITY;
    let mut best_proj = f64::INFINITY;
    for p in design.points() {
        let mut sq = 0.0;
        let mut proj = f64::INFINITY;
        for (x, y) in p.iter().zip(candidate) {
            let g = (x - y).abs();
            sq += g * g;
            proj = proj.min(g);
        }
        best_sq = best_sq.min(sq);
        best_proj = best_proj.min(proj);
    }
    (best_sq, best_proj)
}

fn require_pairs(design: &DesignMatrix, metric: &'static str) -> Result<()> {
    if design.size() < 2 {
        Err(DoeError::UndefinedMetric {
            metric,
            size: design.size(),
        })
    } else {
        Ok(())
    }
}

/// Smallest pairwise Euclidean distance (maxmin criterion, larger is better).
pub fn intersite_distance(design: &DesignMatrix) -> Result<f64> {
    require_pairs(design, "intersite distance")?;
    Ok(min_pairwise_sq(design, 0.0).sqrt())
}

/// Minimum pairwise squared distance, abandoning the scan as soon as it
/// drops below `floor` (the returned value is then some pair below `floor`).
pub(crate) fn min_pairwise_sq(design: &DesignMatrix, floor: f64) -> f64 {
    let n = design.size();
    let mut best = f64::INFINITY;
    for i in 0..n {
        let a = design.point(i);
        for j in (i + 1)..n {
            let s = squared_distance(a, design.point(j));
            if s < best {
                best = s;
                if best < floor {
                    return best;
                }
            }
        }
    }
    best
}

/// `(Σ_{i<j} ‖p_i − p_j‖^{-2p})^{1/p}` over all unordered pairs.
///
/// Evaluated through a log-sum-exp so large `p` does not overflow; coincident
/// points make the sum infinite and are reported as an error.
pub fn phi_p(design: &DesignMatrix, p: u32) -> Result<f64> {
    require_pairs(design, "phi_p")?;
    if p == 0 {
        return Err(DoeError::InvalidArgument("phi_p requires p >= 1".into()));
    }
    let pf = f64::from(p);
    let n = design.size();
    let mut logs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let s = squared_distance(design.point(i), design.point(j));
            if s == 0.0 {
                return Err(DoeError::CoincidentPoints {
                    first: i,
                    second: j,
                });
            }
            logs.push(-pf * s.ln());
        }
    }
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logs.iter().map(|l| (l - top).exp()).sum();
    let value = ((top + sum.ln()) / pf).exp();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(DoeError::MetricOverflow { metric: "phi_p" })
    }
}

/// Smallest per-coordinate gap over all pairs (non-collapsing criterion).
pub fn projected_distance(design: &DesignMatrix) -> Result<f64> {
    require_pairs(design, "projected distance")?;
    let n = design.size();
    let mut best = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            best = best.min(projected_gap(design.point(i), design.point(j)));
        }
    }
    Ok(best)
}

/// Sum of squared Euclidean distances from `candidate` to every design
/// point; larger means more isolated.
pub fn crowding_distance(design: &DesignMatrix, candidate: &[f64]) -> f64 {
    assert_eq!(candidate.len(), design.dim(), "candidate dimension");
    design
        .points()
        .map(|p| squared_distance(p, candidate))
        .sum()
}

/// Index of the interval `[q/m, (q+1)/m)` containing `x`; the last interval
/// is closed so `x = 1` maps to `m − 1`.
///
/// `x·m` is rounded before flooring, so the guess is corrected with an
/// exactly evaluated `x·m − q` to keep values just below `q/m` in interval
/// `q − 1`.
#[inline]
pub fn interval_index(x: f64, m: usize) -> usize {
    let mf = m as f64;
    let mut q = (x * mf).floor();
    if q > 0.0 && x.mul_add(mf, -q) < 0.0 {
        q -= 1.0;
    } else if x.mul_add(mf, -(q + 1.0)) >= 0.0 {
        q += 1.0;
    }
    (q as usize).min(m - 1)
}

/// Per-axis interval occupancy on a grid of `m` intervals.
pub(crate) fn occupancy(design: &DesignMatrix, m: usize) -> Vec<Vec<bool>> {
    let mut occ = vec![vec![false; m]; design.dim()];
    for p in design.points() {
        for (k, &x) in p.iter().enumerate() {
            occ[k][interval_index(x, m)] = true;
        }
    }
    occ
}

/// Fraction of occupied axis intervals on a grid of `m` intervals per axis.
pub fn lhs_fraction_at(design: &DesignMatrix, m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let occupied: usize = occupancy(design, m)
        .iter()
        .map(|axis| axis.iter().filter(|&&o| o).count())
        .sum();
    occupied as f64 / (m * design.dim()) as f64
}

/// Fraction of the `n·d` axis intervals (grid of `n` per axis) that hold at
/// least one point. Equals 1 exactly for a Latin hypercube and is at least
/// `1/n` for any non-empty design; 0 for an empty one.
pub fn lhs_fraction(design: &DesignMatrix) -> f64 {
    lhs_fraction_at(design, design.size())
}

pub fn is_latin_hypercube(design: &DesignMatrix) -> bool {
    let n = design.size();
    n > 0
        && occupancy(design, n)
            .iter()
            .all(|axis| axis.iter().all(|&o| o))
}

/// Summary of the quality criteria of one design. Pairwise metrics are
/// `None` when undefined (fewer than two points, or coincident points for
/// φ_p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricReport {
    pub size: usize,
    pub intersite: Option<f64>,
    pub projected: Option<f64>,
    pub phi_p: Option<f64>,
    pub lhs_fraction: f64,
}

impl MetricReport {
    pub fn of(design: &DesignMatrix, p: u32) -> Self {
        Self {
            size: design.size(),
            intersite: intersite_distance(design).ok(),
            projected: projected_distance(design).ok(),
            phi_p: phi_p(design, p).ok(),
            lhs_fraction: lhs_fraction(design),
        }
    }
}
