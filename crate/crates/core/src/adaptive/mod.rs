//! Sequential exploration samplers. Each call extends a design by exactly
//! one point.
//!
//! * [`mip_next`]: Monte Carlo intersite-projected criterion.
//! * [`mipt_next`]: threshold variant, with the tolerance α either fixed or
//!   tuned per call ([`auto_alpha`]).
//! * [`fpplhs_next`]: fluttering progressive LHS; returns to an exact Latin
//!   hypercube whenever the design size is `n0·2^j`.
//! * [`mqplhs_next`]: greedy Monte Carlo maximisation of the LHS fraction,
//!   ties resolved by distance to the design.
//!
//! The `*_select` functions score a caller-supplied candidate set and are
//! what the samplers use after drawing their uniform candidates. Candidates
//! that coincide exactly with a design point are never selected.

mod fpplhs;
mod monte_carlo;
mod mqplhs;

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::design::DesignMatrix;
use crate::error::{DoeError, Result};
use crate::rng::{self, DoeRng};

pub use fpplhs::{fpplhs_next, FpPlhsState};
pub use monte_carlo::{auto_alpha, mip_next, mip_select, mipt_next, mipt_select, MiptChoice};
pub use mqplhs::{mqplhs_next, mqplhs_select};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdaptiveMethod {
    Mip,
    Mipt,
    FpPlhs,
    MqPlhs,
}

impl AdaptiveMethod {
    pub fn name(self) -> &'static str {
        match self {
            AdaptiveMethod::Mip => "mip",
            AdaptiveMethod::Mipt => "mipt",
            AdaptiveMethod::FpPlhs => "fpplhs",
            AdaptiveMethod::MqPlhs => "mqplhs",
        }
    }
}

impl fmt::Display for AdaptiveMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Tolerance parameter of the threshold sampler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaMode {
    /// Half of the largest α that still admits a candidate, per call.
    Auto,
    Fixed(f64),
}

impl fmt::Display for AlphaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaMode::Auto => f.write_str("auto"),
            AlphaMode::Fixed(a) => write!(f, "{a}"),
        }
    }
}

impl FromStr for AlphaMode {
    type Err = DoeError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(AlphaMode::Auto);
        }
        let a: f64 = s
            .parse()
            .map_err(|_| DoeError::InvalidArgument(format!("alpha must be `auto` or a number, got `{s}`")))?;
        let mode = AlphaMode::Fixed(a);
        mode.validate()?;
        Ok(mode)
    }
}

impl AlphaMode {
    fn validate(self) -> Result<()> {
        match self {
            AlphaMode::Fixed(a) if !(0.0..=1.0).contains(&a) => Err(DoeError::InvalidArgument(
                format!("fixed alpha must lie in [0, 1], got {a}"),
            )),
            _ => Ok(()),
        }
    }
}

/// Parameters of a sequential sampler. Defaults: 100 candidates per design
/// point, 10 slices per design point at each FpPLHS refinement, each slice
/// the best of 10 random bijections, α tuned automatically.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptiveSpec {
    pub method: AdaptiveMethod,
    pub candidates_per_point: usize,
    pub slices_per_refinement: usize,
    pub slice_presamples: usize,
    pub alpha: AlphaMode,
    pub seed: u64,
}

impl AdaptiveSpec {
    pub fn new(method: AdaptiveMethod, seed: u64) -> Self {
        Self {
            method,
            candidates_per_point: 100,
            slices_per_refinement: 10,
            slice_presamples: 10,
            alpha: AlphaMode::Auto,
            seed,
        }
    }

    pub fn with_alpha(mut self, alpha: AlphaMode) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.candidates_per_point == 0 || self.slices_per_refinement == 0 || self.slice_presamples == 0 {
            return Err(DoeError::InvalidArgument(
                "candidate, slice and presample counts must be positive".into(),
            ));
        }
        self.alpha.validate()
    }
}

/// One emitted point plus what the sampler did to choose it.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub point: Vec<f64>,
    /// α used by the threshold sampler.
    pub alpha: Option<f64>,
    /// The threshold sampler found no candidate above `d_min` and fell back
    /// to the candidate with the largest projected distance.
    pub fallback: bool,
}

impl Step {
    fn plain(point: Vec<f64>) -> Self {
        Self {
            point,
            alpha: None,
            fallback: false,
        }
    }
}

/// `count` uniform points in `[0, 1]^dim`.
pub fn draw_candidates<R: Rng + ?Sized>(count: usize, dim: usize, rng: &mut R) -> DesignMatrix {
    let data = (0..count * dim).map(|_| rng.random::<f64>()).collect();
    DesignMatrix::from_flat(dim, data).expect("uniform draws lie in [0, 1)")
}

fn check_inputs(design: &DesignMatrix, candidates: &DesignMatrix) -> Result<()> {
    if design.is_empty() {
        return Err(DoeError::InvalidArgument(
            "sequential samplers need a non-empty starting design".into(),
        ));
    }
    if design.dim() != candidates.dim() {
        return Err(DoeError::DimensionMismatch {
            expected: design.dim(),
            found: candidates.dim(),
        });
    }
    Ok(())
}

/// Draws candidate sets until `select` returns a choice; a set made only of
/// exact duplicates of design points is redrawn.
fn select_from_draws<T>(
    design: &DesignMatrix,
    spec: &AdaptiveSpec,
    rng: &mut DoeRng,
    mut select: impl FnMut(&DesignMatrix) -> Result<Option<T>>,
) -> Result<(DesignMatrix, T)> {
    let count = spec.candidates_per_point * design.size().max(1);
    loop {
        let candidates = draw_candidates(count, design.dim(), rng);
        if let Some(choice) = select(&candidates)? {
            return Ok((candidates, choice));
        }
    }
}

/// A seeded sequential sampler that owns its random stream and, for
/// FpPLHS, its refinement state.
#[derive(Debug, Clone)]
pub struct AdaptiveSampler {
    spec: AdaptiveSpec,
    rng: DoeRng,
    fpplhs: Option<FpPlhsState>,
    fallbacks: usize,
}

impl AdaptiveSampler {
    pub fn new(spec: AdaptiveSpec) -> Result<Self> {
        spec.validate()?;
        let rng = rng::stream(spec.seed, 0);
        Ok(Self {
            spec,
            rng,
            fpplhs: None,
            fallbacks: 0,
        })
    }

    pub fn spec(&self) -> &AdaptiveSpec {
        &self.spec
    }

    /// How many threshold steps used the empty-survivor fallback so far.
    pub fn fallbacks(&self) -> usize {
        self.fallbacks
    }

    pub fn fpplhs_state(&self) -> Option<&FpPlhsState> {
        self.fpplhs.as_ref()
    }

    /// Chooses the next point for `design`. The caller is expected to append
    /// it before the next call.
    pub fn next_step(&mut self, design: &DesignMatrix) -> Result<Step> {
        let step = match self.spec.method {
            AdaptiveMethod::Mip => mip_next(design, &self.spec, &mut self.rng)?,
            AdaptiveMethod::Mipt => mipt_next(design, &self.spec, &mut self.rng)?,
            AdaptiveMethod::MqPlhs => mqplhs_next(design, &self.spec, &mut self.rng)?,
            AdaptiveMethod::FpPlhs => {
                if self.fpplhs.is_none() {
                    self.fpplhs = Some(FpPlhsState::new(design)?);
                }
                let state = self.fpplhs.as_mut().expect("initialised above");
                fpplhs_next(state, design, &self.spec, &mut self.rng)?
            }
        };
        if step.fallback {
            self.fallbacks += 1;
        }
        Ok(step)
    }

    /// Appends points until the design holds `target` points; returns the
    /// steps taken in order.
    pub fn extend(&mut self, design: &mut DesignMatrix, target: usize) -> Result<Vec<Step>> {
        let mut steps = Vec::with_capacity(target.saturating_sub(design.size()));
        while design.size() < target {
            let step = self.next_step(design)?;
            design.push(&step.point)?;
            steps.push(step);
        }
        Ok(steps)
    }
}
