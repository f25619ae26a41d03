//! Design of experiments for surrogate modelling.
//!
//! - [`oneshot`]: random and space-filling Latin hypercubes, designs loaded from file
//! - [`lowdiscrepancy`]: Halton and Sobol sequences
//! - [`adaptive`]: sequential samplers (MIP, MIPT, FpPLHS, MqPLHS) that grow a design one point at a time
//! - [`metrics`]: intersite, projected and φ_p criteria, crowding distance, Latin hypercube fraction
//! - [`benchmarks`]: analytic test functions
//! - [`metamodels`]: Gaussian process and ε-SVR surrogates
//! - [`evaluation`]: RMSE, cross-validation and the repeated RMSE campaign runner
//! - [`voronoi`]: Monte Carlo Voronoi cell areas
//!
//! Every design lives in the unit hypercube `[0, 1]^d`; every random
//! routine takes an explicit seed.
//!
//! ```
//! use adaptive_doe::adaptive::{AdaptiveMethod, AdaptiveSampler, AdaptiveSpec};
//! use adaptive_doe::oneshot::{default_pool, sf_lhs};
//!
//! let mut design = sf_lhs(10, 2, 1, default_pool(2))?;
//! AdaptiveSampler::new(AdaptiveSpec::new(AdaptiveMethod::Mipt, 2))?.extend(&mut design, 20)?;
//! assert_eq!(design.size(), 20);
//! # Ok::<(), adaptive_doe::error::DoeError>(())
//! ```

pub mod adaptive;
pub mod benchmarks;
pub mod cli;
pub mod design;
pub mod error;
pub mod evaluation;
pub mod lowdiscrepancy;
pub mod metamodels;
pub mod metrics;
pub mod oneshot;
pub mod rng;
pub mod sampler;
pub mod voronoi;
