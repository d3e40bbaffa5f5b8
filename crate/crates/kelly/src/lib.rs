//! Discrete-time Kelly betting toolkit.
//!
//! A bettor stakes the fixed fraction `K` of the current account each stage;
//! the account evolves as `V(k+1) = (1 + K*X(k)) * V(k)` with i.i.d. returns
//! `X(k)` drawn from a finite discrete law. The crate provides:
//!
//! - [`distribution`]: validated finite return distributions with exact
//!   moments and sample-based estimation;
//! - [`growth`]: the expected log-growth objective, the survival interval of
//!   gains that never bankrupt the account, the exact concave maximizer, and
//!   the cash-financed attractiveness test;
//! - [`approx`]: the quadratic-approximation optimum, its
//!   variance-denominator variant, and survival saturation;
//! - [`analytics`]: closed-form expected gain, gain variance, log-growth
//!   variance, performance bounds, and approximation-gap bounds;
//! - [`simulate`]: a seeded, thread-count-independent Monte Carlo engine
//!   serving as the stochastic oracle for all of the above.

pub mod analytics;
pub mod approx;
pub mod distribution;
pub mod error;
pub mod growth;
pub mod simulate;

pub use analytics::GainStats;
pub use distribution::{Atom, ReturnDistribution};
pub use error::{Error, Result};
pub use growth::{Attractiveness, Constraint, OptimizationResult, SurvivalInterval};
pub use simulate::{SimulationConfig, SimulationResult};
