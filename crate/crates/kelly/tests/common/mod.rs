//! Shared helpers for the integration tests: seeded random distributions,
//! a brute-force grid maximizer, and an exhaustive sequence-enumeration
//! oracle for the closed-form moment formulas.
//!
//! The oracles here deliberately avoid the library's analytic code paths:
//! the grid maximizer only evaluates `log_growth` pointwise, and the
//! enumeration oracle recomputes moments from first principles over every
//! atom sequence.

#![allow(dead_code)]

use kelly::distribution::ReturnDistribution;
use kelly::growth::survival_interval;
use kelly::simulate::SplitMix64;

pub fn uniform_in(rng: &mut SplitMix64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.next_f64()
}

/// Random distribution with 2..=max_atoms atoms, at least one strictly
/// negative and one strictly positive value, magnitudes in
/// `[0.05, bound]`, pairwise separation at least 0.05, and probabilities of
/// at least 0.05 each.
pub fn random_mixed_distribution(
    rng: &mut SplitMix64,
    max_atoms: usize,
    bound: f64,
) -> ReturnDistribution {
    assert!(bound > 0.1);
    loop {
        let n = 2 + (rng.next_u64() as usize) % (max_atoms - 1);
        let mut values: Vec<f64> = Vec::with_capacity(n);
        // One value of each sign, then free ones.
        values.push(uniform_in(rng, -bound, -0.05));
        values.push(uniform_in(rng, 0.05, bound));
        while values.len() < n {
            let magnitude = uniform_in(rng, 0.05, bound);
            let v = if rng.next_u64().is_multiple_of(2) {
                magnitude
            } else {
                -magnitude
            };
            values.push(v);
        }
        let separated = values
            .iter()
            .enumerate()
            .all(|(i, a)| values[..i].iter().all(|b| (a - b).abs() >= 0.05));
        if !separated {
            continue;
        }

        let weights: Vec<f64> = (0..n).map(|_| uniform_in(rng, 0.05, 1.0)).collect();
        let total: f64 = weights.iter().sum();
        let pairs: Vec<(f64, f64)> = values
            .iter()
            .zip(&weights)
            .map(|(&v, &w)| (v, w / total))
            .collect();
        match ReturnDistribution::from_atoms(pairs) {
            Ok(d) => return d,
            Err(_) => continue,
        }
    }
}

/// Variant of [`random_mixed_distribution`] whose mean magnitude is at least
/// `min_abs_mean` (by rejection).
pub fn random_biased_distribution(
    rng: &mut SplitMix64,
    max_atoms: usize,
    bound: f64,
    min_abs_mean: f64,
) -> ReturnDistribution {
    loop {
        let d = random_mixed_distribution(rng, max_atoms, bound);
        if d.mean().abs() >= min_abs_mean {
            return d;
        }
    }
}

/// A gain drawn uniformly from the middle of the survival interval, rejected
/// until its magnitude reaches `min_abs`. The interval endpoints are pulled
/// in by 10% so the gain is comfortably interior.
pub fn random_interior_gain(rng: &mut SplitMix64, d: &ReturnDistribution, min_abs: f64) -> f64 {
    let s = survival_interval(d);
    assert!(s.lower.is_finite() && s.upper.is_finite());
    let width = s.upper - s.lower;
    let (lo, hi) = (s.lower + 0.1 * width, s.upper - 0.1 * width);
    loop {
        let k = uniform_in(rng, lo, hi);
        if k.abs() >= min_abs {
            return k;
        }
    }
}

/// Best gain on a uniform grid over `[lo, hi]`, judged by `log_growth`.
pub fn grid_best(d: &ReturnDistribution, lo: f64, hi: f64, points: usize) -> (f64, f64) {
    assert!(points >= 2 && hi > lo);
    let mut best_k = lo;
    let mut best_g = f64::NEG_INFINITY;
    for i in 0..points {
        let k = lo + (hi - lo) * i as f64 / (points - 1) as f64;
        let g = kelly::growth::log_growth(d, k);
        if g > best_g {
            best_g = g;
            best_k = k;
        }
    }
    (best_k, best_g)
}

/// Moments recomputed by exhaustive enumeration of every length-`horizon`
/// atom sequence.
#[derive(Debug, Clone, Copy)]
pub struct EnumeratedMoments {
    /// `E[V(N) - V(0)]`.
    pub gain_mean: f64,
    /// `var(V(N) - V(0))`.
    pub gain_variance: f64,
    /// Fourth central moment of `V(N) - V(0)`.
    pub gain_fourth_central: f64,
    /// `E[log(V(N)/V(0))]`, total over the horizon.
    pub log_total_mean: f64,
    /// `var(log(V(N)/V(0)))`.
    pub log_total_variance: f64,
}

/// Walks all `m^horizon` outcome sequences of the distribution and computes
/// exact moments of the cumulative gain and, when every step factor is
/// positive, of the total log ratio.
pub fn enumerate_moments(
    d: &ReturnDistribution,
    gain: f64,
    horizon: u32,
    v0: f64,
) -> EnumeratedMoments {
    let atoms = d.atoms();
    let m = atoms.len();
    let total = m.pow(horizon);
    assert!(total <= 4_000_000, "enumeration too large");

    // First pass: sequence probabilities and terminal values.
    let mut sequence = vec![0usize; horizon as usize];
    let mut values = Vec::with_capacity(total);
    let mut probs = Vec::with_capacity(total);
    let mut logs = Vec::with_capacity(total);
    loop {
        let mut v = v0;
        let mut log_total = 0.0;
        let mut p = 1.0;
        for &idx in &sequence {
            let factor = 1.0 + gain * atoms[idx].value;
            v *= factor;
            p *= atoms[idx].probability;
            log_total += factor.ln(); // NaN-free only for surviving gains
        }
        values.push(v);
        probs.push(p);
        logs.push(log_total);

        // Odometer increment over atom indices.
        let mut pos = 0;
        loop {
            if pos == sequence.len() {
                break;
            }
            sequence[pos] += 1;
            if sequence[pos] < m {
                break;
            }
            sequence[pos] = 0;
            pos += 1;
        }
        if pos == sequence.len() {
            break;
        }
    }

    let mean_v: f64 = values.iter().zip(&probs).map(|(v, p)| v * p).sum();
    let mut var = 0.0;
    let mut fourth = 0.0;
    for (v, p) in values.iter().zip(&probs) {
        let c = v - mean_v;
        var += p * c * c;
        fourth += p * c * c * c * c;
    }
    let log_mean: f64 = logs.iter().zip(&probs).map(|(l, p)| l * p).sum();
    let log_var: f64 = logs
        .iter()
        .zip(&probs)
        .map(|(l, p)| {
            let c = l - log_mean;
            p * c * c
        })
        .sum();

    EnumeratedMoments {
        gain_mean: mean_v - v0,
        gain_variance: var,
        gain_fourth_central: fourth,
        log_total_mean: log_mean,
        log_total_variance: log_var,
    }
}

/// `|a - b| <= tol * max(|a|, |b|)`, treating exact equality (including both
/// zero) as close.
pub fn relatively_close(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    (a - b).abs() <= tol * a.abs().max(b.abs())
}
