//! Side-by-side measures of statistical evidence for the location-normal and
//! scale-normal families: p-values and confidence regions, e-values and
//! anytime-valid e-processes, pure-likelihood (relative, profile and
//! integrated) summaries, relative-belief inference on a δ-discretized grid,
//! and prior-predictive bias diagnostics including the Jeffreys–Lindley
//! sweep.
//!
//! Everything is deterministic given its inputs; Monte Carlo operations take
//! an explicit seed and are invariant to the worker count.

// validation guards are written `!(x > 0.0)` on purpose: NaN must fail them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bias;
pub mod eprocess;
pub mod error;
pub mod freq;
pub mod interval;
pub mod kernel;
pub mod likelihood;
pub mod mc;
pub mod relbel;

pub use error::{Error, Result};
pub use interval::{Interval, IntervalSet};
pub use kernel::{NormalParams, RngSeed, RNG_NAME};
pub use mc::MonteCarloEstimate;
