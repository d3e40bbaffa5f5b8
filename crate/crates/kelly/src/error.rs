//! Error type shared by all modules of the crate.

use std::fmt;

/// Errors produced by distribution construction, solvers, and analytics.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A distribution must contain at least one atom.
    EmptyDistribution,
    /// An atom probability was zero, negative, or not finite.
    NonPositiveProbability { probability: f64 },
    /// Probabilities do not sum to one within the mass tolerance.
    ProbabilityMassNotOne { total: f64 },
    /// An atom value was NaN or infinite.
    NonFiniteValue { value: f64 },
    /// Sample-based estimation needs at least two observations.
    InsufficientSamples { count: usize },
    /// The feedback gain is not strictly inside the survival interval.
    OutsideSurvivalInterval { gain: f64, lower: f64, upper: f64 },
    /// The constraint interval does not intersect the survival interval.
    EmptyFeasibleSet,
    /// The log-growth objective increases without bound on the feasible set.
    UnboundedObjective,
    /// The support must lie strictly inside (-1, 1) for the cash-financed check.
    SupportOutOfUnitRange { x_min: f64, x_max: f64 },
    /// The distribution is the point mass at zero, so E[X^2] = 0.
    DegenerateZeroReturn,
    /// The distribution has zero variance (riskless law).
    ZeroVariance,
    /// The linear-fractional denominator is not positive over the support.
    DenominatorNonPositive { at: f64 },
    /// A distribution file could not be parsed.
    Parse { line: usize, message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyDistribution => write!(f, "distribution has no atoms"),
            Error::NonPositiveProbability { probability } => {
                write!(f, "atom probability {probability} is not strictly positive")
            }
            Error::ProbabilityMassNotOne { total } => {
                write!(f, "probabilities sum to {total}, expected 1 within 1e-12")
            }
            Error::NonFiniteValue { value } => {
                write!(f, "atom value {value} is not finite")
            }
            Error::InsufficientSamples { count } => {
                write!(f, "need at least 2 samples, got {count}")
            }
            Error::OutsideSurvivalInterval { gain, lower, upper } => {
                write!(
                    f,
                    "gain {gain} is outside the open survival interval ({lower}, {upper})"
                )
            }
            Error::EmptyFeasibleSet => {
                write!(
                    f,
                    "constraint interval does not intersect the survival interval"
                )
            }
            Error::UnboundedObjective => {
                write!(
                    f,
                    "log-growth is unbounded on the feasible set; add a finite constraint"
                )
            }
            Error::SupportOutOfUnitRange { x_min, x_max } => {
                write!(
                    f,
                    "support [{x_min}, {x_max}] must lie strictly inside (-1, 1)"
                )
            }
            Error::DegenerateZeroReturn => {
                write!(f, "distribution is the point mass at zero (E[X^2] = 0)")
            }
            Error::ZeroVariance => write!(f, "distribution has zero variance"),
            Error::DenominatorNonPositive { at } => {
                write!(f, "denominator 1 + k*z is not positive at z = {at}")
            }
            Error::Parse { line, message } => write!(f, "line {line}: {message}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
