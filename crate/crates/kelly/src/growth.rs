//! Expected log-growth of the betting account and its exact maximizer.
//!
//! The account follows `V(k+1) = (1 + K*X(k)) * V(k)`, so the per-stage
//! expected log-growth is `g(K) = E[log(1 + K*X)]`, a concave function of the
//! feedback gain `K`. This module provides `g`, its derivative, the open
//! interval of gains that keep the account positive on every sample path, and
//! a bisection solver for the constrained maximizer.

use crate::distribution::ReturnDistribution;
use crate::error::{Error, Result};

/// Relative margin used to step inside an open survival endpoint before
/// evaluating `g` or its derivative there (both diverge at the endpoint).
pub const ENDPOINT_MARGIN: f64 = 1e-9;

/// Absolute bracket width at which bisection stops.
const BRACKET_TOLERANCE: f64 = 1e-12;

/// Doublings attempted on an unbounded side before declaring the objective
/// unbounded.
const MAX_DOUBLINGS: u32 = 200;

/// The open interval of feedback gains that guarantee `V(k) > 0` on every
/// sample path.
///
/// `lower = -1/X_max` when the support has a positive part, else `-inf`;
/// `upper = 1/|X_min|` when it has a negative part, else `+inf`. Both
/// endpoints are excluded; the gain 0 (betting nothing) is always inside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalInterval {
    pub lower: f64,
    pub upper: f64,
}

impl SurvivalInterval {
    /// Whether `gain` lies strictly inside the open interval.
    pub fn contains(&self, gain: f64) -> bool {
        self.lower < gain && gain < self.upper
    }

    /// Endpoints moved inward by `margin * max(1, |endpoint|)`; infinite
    /// endpoints are left untouched.
    pub fn shrunk(&self, margin: f64) -> (f64, f64) {
        let lo = if self.lower.is_finite() {
            self.lower + margin * self.lower.abs().max(1.0)
        } else {
            self.lower
        };
        let hi = if self.upper.is_finite() {
            self.upper - margin * self.upper.abs().max(1.0)
        } else {
            self.upper
        };
        (lo, hi)
    }
}

/// An interval constraint on the feedback gain, closed at finite endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constraint {
    pub lo: f64,
    pub hi: f64,
}

impl Constraint {
    /// No constraint beyond survivability.
    pub fn unbounded() -> Self {
        Constraint {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    /// The cash-financed constraint `K in [-1, 1]` (no leverage).
    pub fn cash() -> Self {
        Constraint { lo: -1.0, hi: 1.0 }
    }

    /// A closed interval `[lo, hi]`; either side may be infinite.
    pub fn interval(lo: f64, hi: f64) -> Self {
        assert!(
            !lo.is_nan() && !hi.is_nan(),
            "constraint bounds must not be NaN"
        );
        Constraint { lo, hi }
    }
}

/// Output of [`solve_exact`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizationResult {
    /// The maximizing feedback gain.
    pub k_star: f64,
    /// `log_growth` recomputed at `k_star`.
    pub g_star: f64,
    /// Final search bracket around `k_star`.
    pub bracket: (f64, f64),
    /// True when the maximizer sits at a finite constraint endpoint.
    pub at_constraint_boundary: bool,
    /// Bisection steps plus bracketing doublings performed.
    pub iterations: u32,
}

/// The open interval of gains for which every sample path stays positive.
pub fn survival_interval(d: &ReturnDistribution) -> SurvivalInterval {
    let (x_min, x_max) = d.support_bounds();
    SurvivalInterval {
        lower: if x_max > 0.0 {
            -1.0 / x_max
        } else {
            f64::NEG_INFINITY
        },
        upper: if x_min < 0.0 {
            1.0 / x_min.abs()
        } else {
            f64::INFINITY
        },
    }
}

/// Expected log-growth `g(K) = Σ p_i log(1 + K x_i)`.
///
/// Returns `-inf` when some atom has `1 + K x_i <= 0`: that gain admits ruin
/// with positive probability. This is a defined value, not an error.
pub fn log_growth(d: &ReturnDistribution, gain: f64) -> f64 {
    debug_assert!(gain.is_finite());
    let mut total = 0.0;
    for atom in d.atoms() {
        let factor = 1.0 + gain * atom.value;
        if factor <= 0.0 {
            return f64::NEG_INFINITY;
        }
        total += atom.probability * factor.ln();
    }
    total
}

/// `g'(K) = Σ p_i x_i / (1 + K x_i)`, defined strictly inside the survival
/// interval.
pub fn log_growth_derivative(d: &ReturnDistribution, gain: f64) -> Result<f64> {
    let interval = survival_interval(d);
    if !interval.contains(gain) {
        return Err(Error::OutsideSurvivalInterval {
            gain,
            lower: interval.lower,
            upper: interval.upper,
        });
    }
    Ok(derivative_unchecked(d, gain))
}

fn derivative_unchecked(d: &ReturnDistribution, gain: f64) -> f64 {
    d.atoms()
        .iter()
        .map(|a| a.probability * a.value / (1.0 + gain * a.value))
        .sum()
}

fn second_derivative_unchecked(d: &ReturnDistribution, gain: f64) -> f64 {
    -d.atoms()
        .iter()
        .map(|a| {
            let f = 1.0 + gain * a.value;
            a.probability * a.value * a.value / (f * f)
        })
        .sum::<f64>()
}

/// Maximizes `g` over the intersection of `constraint` and the survival
/// interval.
///
/// `g` is strictly concave for distributions with two or more atoms and
/// diverges to `-inf` at finite survival endpoints, so the maximizer is
/// either interior (located by bisection on the sign of the derivative down
/// to a bracket of width 1e-12, then polished by a few Newton steps confined
/// to that bracket) or at a finite constraint endpoint strictly inside the
/// survival interval. Infinite search directions are bracketed by doubling
/// outward from zero; if the derivative never changes sign the objective is
/// unbounded.
pub fn solve_exact(d: &ReturnDistribution, constraint: Constraint) -> Result<OptimizationResult> {
    assert!(
        !constraint.lo.is_nan() && !constraint.hi.is_nan(),
        "constraint bounds must not be NaN"
    );
    if constraint.lo > constraint.hi {
        return Err(Error::EmptyFeasibleSet);
    }
    let survival = survival_interval(d);
    // The survival interval is open, so touching an endpoint is not feasible.
    if constraint.hi <= survival.lower || constraint.lo >= survival.upper {
        return Err(Error::EmptyFeasibleSet);
    }

    // Point constraint.
    if constraint.lo == constraint.hi {
        let k = constraint.lo;
        return Ok(OptimizationResult {
            k_star: k,
            g_star: log_growth(d, k),
            bracket: (k, k),
            at_constraint_boundary: true,
            iterations: 0,
        });
    }

    // A symmetric game is never worth betting on: g'(0) = mean = 0 and g is
    // concave, so 0 is the global maximizer. Short-circuiting avoids +-1e-12
    // bisection noise around zero.
    if d.mean() == 0.0 && constraint.lo <= 0.0 && 0.0 <= constraint.hi {
        return Ok(OptimizationResult {
            k_star: 0.0,
            g_star: 0.0,
            bracket: (0.0, 0.0),
            at_constraint_boundary: false,
            iterations: 0,
        });
    }

    let (surv_lo, surv_hi) = survival.shrunk(ENDPOINT_MARGIN);
    let mut iterations: u32 = 0;

    // Lower end of the search bracket.
    let (mut lo, lo_is_constraint) = if constraint.lo >= surv_lo {
        (constraint.lo, true)
    } else {
        (surv_lo, false)
    };
    // Upper end.
    let (mut hi, hi_is_constraint) = if constraint.hi <= surv_hi {
        (constraint.hi, true)
    } else {
        (surv_hi, false)
    };

    if lo >= hi {
        // The feasible set survives only as a sliver thinner than the
        // endpoint margin; return its midpoint.
        let raw_lo = constraint.lo.max(survival.lower);
        let raw_hi = constraint.hi.min(survival.upper);
        let k = 0.5 * (raw_lo + raw_hi);
        return Ok(OptimizationResult {
            k_star: k,
            g_star: log_growth(d, k),
            bracket: (k, k),
            at_constraint_boundary: true,
            iterations: 0,
        });
    }

    // Boundary checks at finite ends; g' is strictly decreasing.
    if lo.is_finite() {
        let d_lo = derivative_unchecked(d, lo);
        if d_lo <= 0.0 {
            return Ok(OptimizationResult {
                k_star: lo,
                g_star: log_growth(d, lo),
                bracket: (lo, lo),
                at_constraint_boundary: lo_is_constraint,
                iterations: 0,
            });
        }
    }
    if hi.is_finite() {
        let d_hi = derivative_unchecked(d, hi);
        if d_hi >= 0.0 {
            return Ok(OptimizationResult {
                k_star: hi,
                g_star: log_growth(d, hi),
                bracket: (hi, hi),
                at_constraint_boundary: hi_is_constraint,
                iterations: 0,
            });
        }
    }

    // Bracket an infinite lower end by doubling away from the finite side.
    if lo == f64::NEG_INFINITY {
        let mut t = if hi.is_finite() && hi < 0.0 {
            2.0 * hi
        } else {
            -1.0
        };
        let mut bracketed = false;
        for _ in 0..MAX_DOUBLINGS {
            iterations += 1;
            if derivative_unchecked(d, t) >= 0.0 {
                lo = t;
                bracketed = true;
                break;
            }
            t *= 2.0;
        }
        if !bracketed {
            return Err(Error::UnboundedObjective);
        }
    }
    if hi == f64::INFINITY {
        let mut t = if lo.is_finite() && lo > 0.0 {
            2.0 * lo
        } else {
            1.0
        };
        let mut bracketed = false;
        for _ in 0..MAX_DOUBLINGS {
            iterations += 1;
            if derivative_unchecked(d, t) <= 0.0 {
                hi = t;
                bracketed = true;
                break;
            }
            t *= 2.0;
        }
        if !bracketed {
            return Err(Error::UnboundedObjective);
        }
    }

    // Bisection on the derivative sign: invariant g'(lo) > 0 > g'(hi).
    while hi - lo > BRACKET_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // no representable midpoint left
        }
        iterations += 1;
        if derivative_unchecked(d, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // Newton polish confined to the terminal bracket; drives |g'| toward
    // machine precision without leaving the certified interval.
    let mut k = 0.5 * (lo + hi);
    let mut best_abs = derivative_unchecked(d, k).abs();
    for _ in 0..3 {
        let d1 = derivative_unchecked(d, k);
        let d2 = second_derivative_unchecked(d, k);
        if d2 == 0.0 {
            break;
        }
        let candidate = (k - d1 / d2).clamp(lo, hi);
        let cand_abs = derivative_unchecked(d, candidate).abs();
        if cand_abs < best_abs {
            k = candidate;
            best_abs = cand_abs;
        } else {
            break;
        }
    }

    Ok(OptimizationResult {
        k_star: k,
        g_star: log_growth(d, k),
        bracket: (lo, hi),
        at_constraint_boundary: false,
        iterations,
    })
}

/// Verdict of the cash-financed attractiveness test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Attractiveness {
    /// `E[1/(1+X)] <= 1`: betting the whole account long is optimal on [-1, 1].
    FullLong,
    /// `E[1/(1-X)] <= 1`: betting the whole account short is optimal on [-1, 1].
    FullShort,
    /// Neither sufficient condition holds.
    Inconclusive,
}

/// Checks the sufficient attractiveness inequalities for the cash-financed
/// constraint `K in [-1, 1]`.
///
/// Requires the support to lie strictly inside `(-1, 1)`. The two conditions
/// exclude each other for non-degenerate laws (each forces the sign of the
/// mean); the point mass at zero satisfies both and is reported `FullLong`.
pub fn attractiveness_check(d: &ReturnDistribution) -> Result<Attractiveness> {
    let (x_min, x_max) = d.support_bounds();
    if x_min <= -1.0 || x_max >= 1.0 {
        return Err(Error::SupportOutOfUnitRange { x_min, x_max });
    }
    let long_side: f64 = d
        .atoms()
        .iter()
        .map(|a| a.probability / (1.0 + a.value))
        .sum();
    if long_side <= 1.0 {
        return Ok(Attractiveness::FullLong);
    }
    let short_side: f64 = d
        .atoms()
        .iter()
        .map(|a| a.probability / (1.0 - a.value))
        .sum();
    if short_side <= 1.0 {
        return Ok(Attractiveness::FullShort);
    }
    Ok(Attractiveness::Inconclusive)
}
