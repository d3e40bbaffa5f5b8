//! Closed-form performance and risk formulas for constant-gain betting.
//!
//! Everything here is an exact finite sum or power over the atoms; no
//! sampling is involved. The `simulate` module provides the independent
//! stochastic cross-check.

use crate::distribution::ReturnDistribution;
use crate::error::{Error, Result};
use crate::growth::{log_growth, survival_interval};

/// `base^n`, switching to log space for large horizons to avoid intermediate
/// overflow; below that, direct integer exponentiation keeps results
/// bit-stable for the tests.
fn pow_n(base: f64, n: u32) -> f64 {
    if n > 1000 && base > 0.0 {
        (n as f64 * base.ln()).exp()
    } else {
        base.powi(n as i32)
    }
}

/// Expected cumulative gain or loss and its variance for one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainStats {
    /// Expected cumulative gain or loss, in account currency.
    pub expected_gain: f64,
    /// Variance of the cumulative gain or loss, in currency squared.
    pub gain_variance: f64,
    /// Betting horizon in stages.
    pub horizon: u32,
    /// Initial account value.
    pub v0: f64,
    /// Feedback gain the stats are evaluated at.
    pub gain: f64,
}

impl GainStats {
    pub fn compute(d: &ReturnDistribution, gain: f64, horizon: u32, v0: f64) -> Self {
        GainStats {
            expected_gain: expected_gain(d, gain, horizon, v0),
            gain_variance: gain_variance(d, gain, horizon, v0),
            horizon,
            v0,
            gain,
        }
    }
}

/// Jensen bound `log(1 + mu^2 / E[X^2])` on the log-growth achievable with
/// the Taylor-optimal gain; never exceeds `log 2`.
pub fn best_performance_bound(d: &ReturnDistribution) -> Result<f64> {
    let m2 = d.second_moment();
    if m2 <= 0.0 {
        return Err(Error::DegenerateZeroReturn);
    }
    let mean = d.mean();
    Ok((1.0 + mean * mean / m2).ln())
}

/// The analogous bound `log(1 + mu^2 / var(X))` for the variance-denominator
/// gain.
pub fn merton_performance_bound(d: &ReturnDistribution) -> Result<f64> {
    let var = d.variance();
    if var <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    let mean = d.mean();
    Ok((1.0 + mean * mean / var).ln())
}

/// Expected cumulative gain or loss `((1 + K*mu)^N - 1) * v0`.
///
/// The formula is valid for any finite gain; survivability is the caller's
/// concern and is warned about separately by the CLI.
pub fn expected_gain(d: &ReturnDistribution, gain: f64, horizon: u32, v0: f64) -> f64 {
    assert!(horizon >= 1, "horizon must be at least 1");
    assert!(v0 > 0.0, "initial account value must be positive");
    (pow_n(1.0 + gain * d.mean(), horizon) - 1.0) * v0
}

/// Variance of the cumulative gain or loss,
/// `((m^2 + s^2)^N - m^(2N)) * v0^2` with `m = 1 + K*mu` and `s = K*sigma`.
pub fn gain_variance(d: &ReturnDistribution, gain: f64, horizon: u32, v0: f64) -> f64 {
    assert!(horizon >= 1, "horizon must be at least 1");
    assert!(v0 > 0.0, "initial account value must be positive");
    let m = 1.0 + gain * d.mean();
    let s_sq = gain * gain * d.variance();
    (pow_n(m * m + s_sq, horizon) - pow_n(m * m, horizon)) * v0 * v0
}

/// Variance of the total log ratio, `N * (E[log^2(1 + K*X)] - g(K)^2)`.
///
/// Requires the gain strictly inside the survival interval so every log is
/// finite.
pub fn log_growth_variance(d: &ReturnDistribution, gain: f64, horizon: u32) -> Result<f64> {
    assert!(horizon >= 1, "horizon must be at least 1");
    let interval = survival_interval(d);
    if !interval.contains(gain) {
        return Err(Error::OutsideSurvivalInterval {
            gain,
            lower: interval.lower,
            upper: interval.upper,
        });
    }
    let second: f64 = d
        .atoms()
        .iter()
        .map(|a| {
            let l = (1.0 + gain * a.value).ln();
            a.probability * l * l
        })
        .sum();
    let g = log_growth(d, gain);
    Ok(horizon as f64 * (second - g * g))
}

/// Jensen upper bound `log E[(1 + K_star*X) / (1 + K_approx*X)]` on the
/// log-growth lost by using `k_approx` instead of `k_star`.
///
/// Returns exactly 0 when the two gains are equal. Both gains must be
/// strictly inside the survival interval. The bound can be very loose when
/// `k_approx` sits near a survival endpoint; it is reported raw, not clipped.
pub fn gap_upper_bound(d: &ReturnDistribution, k_star: f64, k_approx: f64) -> Result<f64> {
    let interval = survival_interval(d);
    for gain in [k_star, k_approx] {
        if !interval.contains(gain) {
            return Err(Error::OutsideSurvivalInterval {
                gain,
                lower: interval.lower,
                upper: interval.upper,
            });
        }
    }
    if k_star == k_approx {
        return Ok(0.0);
    }
    let expectation: f64 = d
        .atoms()
        .iter()
        .map(|a| a.probability * (1.0 + k_star * a.value) / (1.0 + k_approx * a.value))
        .sum();
    Ok(expectation.ln())
}

/// Endpoint maximum of the linear-fractional function
/// `f(z) = (1 + k_star*z) / (1 + k_approx*z)` over `[x_min, x_max]`.
///
/// With a positive denominator on the whole interval, `f` is a monotone
/// Moebius function, so the maximum sits at an endpoint; this is the
/// one-dimensional specialization of recasting the fractional program as a
/// linear one. `log` of this value dominates [`gap_upper_bound`].
pub fn fractional_vertex_bound(k_star: f64, k_approx: f64, x_min: f64, x_max: f64) -> Result<f64> {
    assert!(x_min <= x_max, "support bounds out of order");
    for z in [x_min, x_max] {
        if 1.0 + k_approx * z <= 0.0 {
            return Err(Error::DenominatorNonPositive { at: z });
        }
    }
    let f = |z: f64| (1.0 + k_star * z) / (1.0 + k_approx * z);
    Ok(f(x_min).max(f(x_max)))
}

/// Whether the expected cumulative gain is nonnegative and nondecreasing for
/// every horizon `1 <= N < n_max` (with `v0 = 1`).
///
/// Holds for every distribution when the gain is the Taylor optimum.
pub fn expected_gain_monotone_check(d: &ReturnDistribution, gain: f64, n_max: u32) -> bool {
    assert!(n_max >= 2, "n_max must be at least 2");
    let mut previous = 0.0;
    for n in 1..=n_max {
        let current = expected_gain(d, gain, n, 1.0);
        if current < previous || current < 0.0 {
            return false;
        }
        previous = current;
    }
    true
}
