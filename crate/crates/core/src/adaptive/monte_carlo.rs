use rayon::prelude::*;

use super::{check_inputs, select_from_draws, AdaptiveSpec, AlphaMode, Step};
use crate::design::DesignMatrix;
use crate::error::Result;
use crate::metrics::nearest;
use crate::rng::DoeRng;

/// Distance of each candidate to the design: `(min squared Euclidean,
/// min projected)`. Exact duplicates of a design point come back as `None`.
pub(super) fn candidate_distances(design: &DesignMatrix, candidates: &DesignMatrix) -> Vec<Option<(f64, f64)>> {
    let rows: Vec<&[f64]> = candidates.points().collect();
    rows.par_iter()
        .with_min_len(256)
        .map(|c| {
            let (sq, proj) = nearest(design, c);
            (sq > 0.0).then_some((sq, proj))
        })
        .collect()
}

fn argmax_by<T>(items: impl Iterator<Item = (usize, T)>, score: impl Fn(&T) -> f64) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, item) in items {
        let s = score(&item);
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((i, s));
        }
    }
    best.map(|(i, _)| i)
}

/// Index of the candidate maximising
/// `((n+1)^{1/d} − 1)/2 · min‖p_i − p‖₂ + (n+1)/2 · min‖p_i − p‖₋∞`.
///
/// Ties go to the lowest index; `None` if every candidate duplicates a
/// design point.
pub fn mip_select(design: &DesignMatrix, candidates: &DesignMatrix) -> Result<Option<usize>> {
    check_inputs(design, candidates)?;
    let n1 = (design.size() + 1) as f64;
    let d = design.dim() as f64;
    let w_intersite = (n1.powf(1.0 / d) - 1.0) / 2.0;
    let w_projected = n1 / 2.0;
    let dist = candidate_distances(design, candidates);
    Ok(argmax_by(
        dist.into_iter().enumerate().filter_map(|(i, v)| v.map(|v| (i, v))),
        |&(sq, proj)| w_intersite * sq.sqrt() + w_projected * proj,
    ))
}

pub fn mip_next(design: &DesignMatrix, spec: &AdaptiveSpec, rng: &mut DoeRng) -> Result<Step> {
    let (candidates, index) = select_from_draws(design, spec, rng, |c| mip_select(design, c))?;
    Ok(Step::plain(candidates.point(index).to_vec()))
}

fn alpha_from_max_projected(n: usize, pd_max: f64) -> f64 {
    let alpha_max = n as f64 * pd_max / 2.0;
    (alpha_max / 2.0).clamp(0.0, 1.0)
}

/// Automatic tolerance: half of the largest α for which some candidate
/// still meets `min‖p_i − p‖₋∞ ≥ 2α/n`, clamped to `[0, 1]`.
///
/// With `pd_max` the best projected distance over the candidates,
/// `α_max = n·pd_max/2` and the resulting threshold is `pd_max/2`.
pub fn auto_alpha(design: &DesignMatrix, candidates: &DesignMatrix) -> Result<f64> {
    check_inputs(design, candidates)?;
    let pd_max = candidate_distances(design, candidates)
        .into_iter()
        .flatten()
        .map(|(_, proj)| proj)
        .fold(0.0, f64::max);
    Ok(alpha_from_max_projected(design.size(), pd_max))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiptChoice {
    pub index: usize,
    pub alpha: f64,
    /// `2α/n`
    pub threshold: f64,
    pub fallback: bool,
}

/// Threshold selection: drop candidates whose projected distance to the
/// design is below `d_min = 2α/n`, then take the survivor farthest from the
/// design. If nothing survives (only possible with a fixed α) the candidate
/// with the largest projected distance is returned and flagged.
pub fn mipt_select(design: &DesignMatrix, candidates: &DesignMatrix, alpha: AlphaMode) -> Result<Option<MiptChoice>> {
    check_inputs(design, candidates)?;
    let n = design.size();
    let dist = candidate_distances(design, candidates);
    let valid = || dist.iter().enumerate().filter_map(|(i, v)| v.map(|v| (i, v)));
    let alpha = match alpha {
        AlphaMode::Fixed(a) => a,
        AlphaMode::Auto => {
            let pd_max = valid().map(|(_, (_, proj))| proj).fold(0.0, f64::max);
            alpha_from_max_projected(n, pd_max)
        }
    };
    let threshold = 2.0 * alpha / n as f64;
    if let Some(index) = argmax_by(valid().filter(|(_, (_, proj))| *proj >= threshold), |&(sq, _)| sq) {
        return Ok(Some(MiptChoice {
            index,
            alpha,
            threshold,
            fallback: false,
        }));
    }
    Ok(argmax_by(valid(), |&(_, proj)| proj).map(|index| MiptChoice {
        index,
        alpha,
        threshold,
        fallback: true,
    }))
}

pub fn mipt_next(design: &DesignMatrix, spec: &AdaptiveSpec, rng: &mut DoeRng) -> Result<Step> {
    let (candidates, choice) = select_from_draws(design, spec, rng, |c| mipt_select(design, c, spec.alpha))?;
    Ok(Step {
        point: candidates.point(choice.index).to_vec(),
        alpha: Some(choice.alpha),
        fallback: choice.fallback,
    })
}
