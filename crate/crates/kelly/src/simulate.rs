//! Seeded Monte Carlo engine for the account recursion
//! `V(k+1) = (1 + K*X(k)) * V(k)`.
//!
//! The engine is the independent stochastic cross-check for every closed
//! form in [`crate::analytics`] and the demonstrator for survivability.
//! Results are a pure function of `(distribution, config)`: the random
//! stream for path `i` is derived solely from `(seed, i)`, paths may run on
//! any number of threads in any order, and the summary reduction walks the
//! paths in index order, so output is bit-identical across runs and thread
//! counts.
//!
//! # Random number generator
//!
//! The generator is SplitMix64, fixed here so that results are portable
//! across platforms and releases. State advances by the 64-bit golden-ratio
//! increment `0x9E3779B97F4A7C15`; each output is the finalizer
//!
//! ```text
//! z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//! z ^= z >> 27; z *= 0x94D049BB133111EB;
//! z ^= z >> 31;
//! ```
//!
//! applied to the state. The stream for path `i` starts from
//! `mix(seed ^ mix((i + 1) * 0x9E3779B97F4A7C15))`, which decorrelates
//! per-path streams from one another and from the raw seed. Uniforms in
//! `[0, 1)` take the top 53 bits: `(z >> 11) * 2^-53`.

use rayon::prelude::*;

use crate::distribution::ReturnDistribution;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64 pseudo-random generator; see the module docs for the exact
/// algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Generator seeded directly with `seed`.
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Decorrelated generator for sub-stream `stream` of `seed`; used for
    /// per-path streams.
    pub fn for_stream(seed: u64, stream: u64) -> Self {
        SplitMix64 {
            state: mix64(seed ^ mix64(stream.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA))),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Inverse-CDF sampler over the sorted atoms of a distribution.
///
/// Cumulative sums are precomputed once; each draw is a binary search with
/// right-closed intervals, so a uniform exactly on a boundary selects the
/// lower atom.
#[derive(Debug, Clone)]
pub struct ReturnSampler {
    values: Vec<f64>,
    cumulative: Vec<f64>,
}

impl ReturnSampler {
    pub fn new(d: &ReturnDistribution) -> Self {
        let values: Vec<f64> = d.atoms().iter().map(|a| a.value).collect();
        let mut cumulative = Vec::with_capacity(values.len());
        let mut total = 0.0;
        for atom in d.atoms() {
            total += atom.probability;
            cumulative.push(total);
        }
        ReturnSampler { values, cumulative }
    }

    /// One return drawn with `rng`.
    pub fn draw(&self, rng: &mut SplitMix64) -> f64 {
        let u = rng.next_f64();
        // First index whose cumulative mass reaches u; clamp covers the
        // sub-1e-12 mass shortfall the distribution invariant allows.
        let idx = self
            .cumulative
            .partition_point(|&c| c < u)
            .min(self.values.len() - 1);
        self.values[idx]
    }
}

/// Parameters of one Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    /// Feedback gain.
    pub gain: f64,
    /// Number of betting stages per path.
    pub horizon: u32,
    /// Initial account value.
    pub v0: f64,
    /// Number of independent sample paths.
    pub paths: u64,
    /// Seed of the whole run; path `i` uses the sub-stream `(seed, i)`.
    pub seed: u64,
}

/// Per-path simulation output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathOutcome {
    /// Account value after the final stage.
    pub terminal_value: f64,
    /// `log(V(N)/V(0))`; NaN for ruined paths, where the log is undefined.
    pub log_ratio: f64,
    /// Smallest account value over all stages, including the initial one.
    pub min_value: f64,
    /// Whether some stage reached `V <= 0`.
    pub ruined: bool,
}

/// Quantile levels reported in [`SimulationResult::terminal_quantiles`].
pub const QUANTILE_LEVELS: [f64; 5] = [0.01, 0.25, 0.50, 0.75, 0.99];

/// Summary statistics of a Monte Carlo run.
///
/// Gain statistics cover every path: the account recursion is continued
/// through ruin so that the sample moments stay comparable with the
/// closed-form moments of `V(N)`, which are blind to the sign of
/// intermediate values. Log-growth statistics cover non-ruined paths only
/// (the log is undefined at ruin) and are NaN when every path is ruined;
/// `ruin_paths` reports how many were excluded.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    /// Sample mean of `V(N) - V(0)` over all paths.
    pub empirical_gain_mean: f64,
    /// Unbiased sample variance of `V(N) - V(0)` over all paths.
    pub empirical_gain_variance: f64,
    /// Sample mean of the per-stage log-growth `log(V(N)/V(0)) / N`.
    pub empirical_log_growth_mean: f64,
    /// Unbiased sample variance of the total log ratio `log(V(N)/V(0))`.
    pub empirical_log_growth_variance: f64,
    /// Smallest account value seen on any path at any stage.
    pub min_account_value: f64,
    /// Number of paths on which some stage reached `V <= 0`.
    pub ruin_paths: u64,
    /// Terminal account values at the [`QUANTILE_LEVELS`].
    pub terminal_quantiles: [f64; 5],
}

/// Simulates all paths and returns the per-path outcomes in path order.
pub fn run_paths(d: &ReturnDistribution, cfg: &SimulationConfig) -> Vec<PathOutcome> {
    assert!(cfg.paths >= 1, "need at least one path");
    assert!(cfg.horizon >= 1, "horizon must be at least 1");
    assert!(cfg.v0 > 0.0, "initial account value must be positive");

    let sampler = ReturnSampler::new(d);
    (0..cfg.paths)
        .into_par_iter()
        .map(|path| {
            let mut rng = SplitMix64::for_stream(cfg.seed, path);
            let mut value = cfg.v0;
            let mut min_value = cfg.v0;
            let mut ruined = false;
            for _ in 0..cfg.horizon {
                let x = sampler.draw(&mut rng);
                value *= 1.0 + cfg.gain * x;
                if value <= 0.0 {
                    ruined = true;
                }
                if value < min_value {
                    min_value = value;
                }
            }
            PathOutcome {
                terminal_value: value,
                log_ratio: if ruined {
                    f64::NAN
                } else {
                    (value / cfg.v0).ln()
                },
                min_value,
                ruined,
            }
        })
        .collect()
}

/// Reduces per-path outcomes to summary statistics.
///
/// The reduction is sequential in path order, so it is deterministic for a
/// given outcome vector.
pub fn summarize(cfg: &SimulationConfig, outcomes: &[PathOutcome]) -> SimulationResult {
    let n = outcomes.len();
    assert!(n >= 1, "need at least one outcome");

    let gains: Vec<f64> = outcomes.iter().map(|o| o.terminal_value - cfg.v0).collect();
    let (gain_mean, gain_var) = mean_and_variance(&gains);

    let logs: Vec<f64> = outcomes
        .iter()
        .filter(|o| !o.ruined)
        .map(|o| o.log_ratio)
        .collect();
    let (log_mean_total, log_var) = if logs.is_empty() {
        (f64::NAN, f64::NAN)
    } else {
        mean_and_variance(&logs)
    };

    let mut min_account_value = cfg.v0;
    let mut ruin_paths = 0u64;
    for o in outcomes {
        if o.min_value < min_account_value {
            min_account_value = o.min_value;
        }
        if o.ruined {
            ruin_paths += 1;
        }
    }

    let mut terminal: Vec<f64> = outcomes.iter().map(|o| o.terminal_value).collect();
    terminal.sort_unstable_by(f64::total_cmp);
    let mut terminal_quantiles = [0.0; 5];
    for (slot, q) in terminal_quantiles.iter_mut().zip(QUANTILE_LEVELS) {
        // Nearest-rank quantile.
        let rank = (q * n as f64).ceil() as usize;
        *slot = terminal[rank.saturating_sub(1).min(n - 1)];
    }

    SimulationResult {
        empirical_gain_mean: gain_mean,
        empirical_gain_variance: gain_var,
        empirical_log_growth_mean: log_mean_total / cfg.horizon as f64,
        empirical_log_growth_variance: log_var,
        min_account_value,
        ruin_paths,
        terminal_quantiles,
    }
}

fn mean_and_variance(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values
        .iter()
        .map(|v| {
            let d = v - mean;
            d * d
        })
        .sum();
    (mean, ss / (n - 1) as f64)
}

/// Simulates `cfg.paths` independent paths and summarizes them.
pub fn simulate_paths(d: &ReturnDistribution, cfg: &SimulationConfig) -> SimulationResult {
    summarize(cfg, &run_paths(d, cfg))
}

/// Whether the account stays positive on every worst-case sample path over
/// `horizon` stages.
///
/// Computed two ways and cross-checked: the per-step condition
/// `1 + K*X_min > 0 and 1 + K*X_max > 0` (sufficient because the dynamics
/// are multiplicative and the step factor is affine in the return), and, for
/// horizons up to 20, exhaustive enumeration of all `2^N` sequences over
/// `{X_min, X_max}`.
pub fn worst_case_survival(d: &ReturnDistribution, gain: f64, horizon: u32) -> bool {
    assert!(horizon >= 1, "horizon must be at least 1");
    let (x_min, x_max) = d.support_bounds();
    let per_step = 1.0 + gain * x_min > 0.0 && 1.0 + gain * x_max > 0.0;

    if horizon <= 20 {
        let enumeration = survives_all_sequences(1.0, gain, x_min, x_max, horizon);
        assert_eq!(
            enumeration, per_step,
            "enumeration and per-step survival routes disagree"
        );
    }
    per_step
}

fn survives_all_sequences(value: f64, gain: f64, x_min: f64, x_max: f64, remaining: u32) -> bool {
    if value <= 0.0 {
        return false;
    }
    if remaining == 0 {
        return true;
    }
    survives_all_sequences(
        value * (1.0 + gain * x_min),
        gain,
        x_min,
        x_max,
        remaining - 1,
    ) && survives_all_sequences(
        value * (1.0 + gain * x_max),
        gain,
        x_min,
        x_max,
        remaining - 1,
    )
}
