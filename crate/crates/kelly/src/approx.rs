//! Quadratic (second-order Taylor) approximation of the log-growth objective
//! and its closed-form maximizers.
//!
//! Expanding `log(1 + K*X)` to second order around `K = 0` turns the Kelly
//! problem into maximizing `K*E[X] - K^2*E[X^2]/2`, whose peak is at
//! `K = E[X]/E[X^2]`. The variance-denominator variant `E[X]/var(X)` is the
//! discrete-time counterpart of the continuous-time optimal fraction. Neither
//! closed form respects survivability, so [`saturate`] clamps a gain strictly
//! inside the survival interval.

use crate::distribution::ReturnDistribution;
use crate::error::{Error, Result};
use crate::growth::SurvivalInterval;

/// Default relative margin used by [`saturate`].
pub const DEFAULT_SATURATION_MARGIN: f64 = 1e-9;

/// The quadratic model `K*E[X] - K^2*E[X^2]/2` of the log-growth objective.
pub fn quadratic_objective(d: &ReturnDistribution, gain: f64) -> f64 {
    gain * d.mean() - 0.5 * gain * gain * d.second_moment()
}

/// Closed-form maximizer `E[X]/E[X^2]` of the quadratic model.
///
/// Defined whenever `E[X^2] > 0`; only the point mass at zero is rejected.
pub fn kelly_taylor(d: &ReturnDistribution) -> Result<f64> {
    let m2 = d.second_moment();
    if m2 <= 0.0 {
        return Err(Error::DegenerateZeroReturn);
    }
    Ok(d.mean() / m2)
}

/// The variance-denominator variant `E[X]/var(X)`.
///
/// Undefined for riskless laws (zero variance).
pub fn kelly_merton(d: &ReturnDistribution) -> Result<f64> {
    let var = d.variance();
    if var <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok(d.mean() / var)
}

/// Clamps `gain` into the survival interval, stopping short of each finite
/// endpoint by `margin * max(1, |endpoint|)`.
///
/// The clamp is strict on purpose: at the endpoint itself one atom yields
/// `1 + K*x = 0` and the log-growth is `-inf`, so the no-bankruptcy guarantee
/// only holds strictly inside. Infinite endpoints never clamp; an interior
/// gain is returned unchanged.
pub fn saturate(gain: f64, interval: &SurvivalInterval, margin: f64) -> f64 {
    let (lo, hi) = interval.shrunk(margin);
    if lo > hi {
        // Margin wider than the interval itself; fall back to the midpoint.
        return 0.5 * (interval.lower + interval.upper);
    }
    gain.clamp(lo, hi)
}
