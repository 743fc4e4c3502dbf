//! Distribution-free confidence intervals for the mutual information of two
//! finite-alphabet random variables.
//!
//! The pipeline: tally paired samples into a [`CountTable`], pick a confidence
//! level, and build either the worst-case interval (plug-in MI plus/minus a
//! half-width that depends only on `n`, `alpha` and the alphabet sizes) or the
//! entropy-ball interval (each entropy term optimized over an L1 ball around
//! the empirical distribution). [`required_sample_size`] inverts the
//! worst-case construction, and [`montecarlo`] simulates sampling
//! distributions and coverage.
//!
//! All quantities are computed in nats; use [`Unit`] to present bits.
//!
//! ```
//! use miconf::{worst_case_interval, CountTable, Unit};
//!
//! let counts = CountTable::new(2, 2, vec![44950, 5058, 4868, 45124])?;
//! let ci = worst_case_interval(&counts, 0.05)?.to_unit(Unit::Bits);
//! assert!((ci.lower - 0.38170).abs() < 1e-5);
//! # Ok::<(), miconf::Error>(())
//! ```

pub mod bounds;
pub mod dist;
pub mod entropy_opt;
mod error;
pub mod intervals;
pub mod montecarlo;

pub use bounds::{
    delta_i, delta_i_zhang, epsilon_for_confidence, weissman_tail, AlphabetPair, ConfidenceQuery,
};
pub use dist::{
    binary_entropy, entropy, variational_distance, CountTable, JointDistribution,
    MarginalDistribution, Unit,
};
pub use entropy_opt::{max_entropy_in_ball, min_entropy_in_ball, EntropyBallSolution, Extremum};
pub use error::{Error, Result};
pub use intervals::{
    entropy_ball_interval, required_sample_size, worst_case_interval, Interval, Method,
    SampleSizePlan,
};
