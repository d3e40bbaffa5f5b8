//! The five report-producing commands, kept free of I/O so they can be
//! exercised directly by tests; the binary handles file loading and output.

use kelly::analytics::{
    best_performance_bound, expected_gain, expected_gain_monotone_check, fractional_vertex_bound,
    gain_variance, gap_upper_bound, log_growth_variance, merton_performance_bound,
};
use kelly::approx::{kelly_merton, kelly_taylor, saturate};
use kelly::growth::{
    attractiveness_check, log_growth, solve_exact, survival_interval, Attractiveness, Constraint,
};
use kelly::simulate::{run_paths, summarize, PathOutcome, SimulationConfig};
use kelly::{Result, ReturnDistribution};

use crate::report::{format_significant, Report};

/// Horizon over which `analyze` verifies that the expected gain is
/// nondecreasing.
pub const MONOTONE_HORIZON: u32 = 50;

fn add_distribution_section(report: &mut Report, d: &ReturnDistribution) {
    let (x_min, x_max) = d.support_bounds();
    report.add_int("distribution", "atoms", d.atoms().len() as u64);
    report.add_num("distribution", "mean", d.mean());
    report.add_num("distribution", "variance", d.variance());
    report.add_num("distribution", "x_min", x_min);
    report.add_num("distribution", "x_max", x_max);
}

fn add_survival_section(report: &mut Report, d: &ReturnDistribution) {
    let s = survival_interval(d);
    report.add_num("survival", "lower", s.lower);
    report.add_num("survival", "upper", s.upper);
}

/// Maximizes the log-growth over `constraint` and reports the optimum,
/// including the cash-financed attractiveness verdict when the support
/// permits it.
pub fn cmd_solve(d: &ReturnDistribution, constraint: Constraint) -> Result<Report> {
    let result = solve_exact(d, constraint)?;

    let mut report = Report::new();
    add_distribution_section(&mut report, d);
    add_survival_section(&mut report, d);
    report.add_num("solve", "k_star", result.k_star);
    report.add_num("solve", "g_star", result.g_star);
    report.add_bool(
        "solve",
        "at_constraint_boundary",
        result.at_constraint_boundary,
    );
    report.add_int("solve", "iterations", result.iterations as u64);
    let verdict = match attractiveness_check(d) {
        Ok(Attractiveness::FullLong) => "full_long".to_string(),
        Ok(Attractiveness::FullShort) => "full_short".to_string(),
        Ok(Attractiveness::Inconclusive) => "inconclusive".to_string(),
        Err(_) => "unavailable (support outside (-1, 1))".to_string(),
    };
    report.add("solve", "attractiveness", verdict);
    Ok(report)
}

/// Reports the quadratic-approximation gain, its saturated value, and
/// optionally the variance-denominator variant.
pub fn cmd_approx(
    d: &ReturnDistribution,
    merton: bool,
    no_saturate: bool,
    margin: f64,
) -> Result<Report> {
    let raw = kelly_taylor(d)?;
    let s = survival_interval(d);

    let mut report = Report::new();
    add_distribution_section(&mut report, d);
    add_survival_section(&mut report, d);
    report.add_num("approx", "k_taylor", raw);
    if !no_saturate {
        report.add_num("approx", "k_saturated", saturate(raw, &s, margin));
    }
    if merton {
        match kelly_merton(d) {
            Ok(k) => report.add_num("approx", "k_merton", k),
            Err(_) => report.add("approx", "k_merton", "unavailable (zero variance)"),
        }
    }
    if !s.contains(raw) {
        report.warn(format!(
            "approximate gain {} is outside the survival interval ({}, {})",
            format_significant(raw),
            format_significant(s.lower),
            format_significant(s.upper),
        ));
    }
    Ok(report)
}

/// Reports the closed-form performance and risk figures for a given gain,
/// horizon, and initial account.
pub fn cmd_analyze(d: &ReturnDistribution, gain: f64, horizon: u32, v0: f64) -> Result<Report> {
    let s = survival_interval(d);

    let mut report = Report::new();
    add_distribution_section(&mut report, d);
    report.add_num("input", "k", gain);
    report.add_int("input", "n", horizon as u64);
    report.add_num("input", "v0", v0);

    match best_performance_bound(d) {
        Ok(b) => report.add_num("bounds", "best_performance_bound", b),
        Err(_) => report.add(
            "bounds",
            "best_performance_bound",
            "unavailable (zero return)",
        ),
    }
    match merton_performance_bound(d) {
        Ok(b) => report.add_num("bounds", "merton_performance_bound", b),
        Err(_) => report.add(
            "bounds",
            "merton_performance_bound",
            "unavailable (zero variance)",
        ),
    }

    report.add_num("gain", "expected_gain", expected_gain(d, gain, horizon, v0));
    report.add_num("gain", "gain_variance", gain_variance(d, gain, horizon, v0));

    report.add_num("log_growth", "g", log_growth(d, gain));
    match log_growth_variance(d, gain, horizon) {
        Ok(v) => report.add_num("log_growth", "log_growth_variance", v),
        Err(_) => report.add(
            "log_growth",
            "log_growth_variance",
            "unavailable (outside survival interval)",
        ),
    }

    report.add_int("monotonicity", "horizon", MONOTONE_HORIZON as u64);
    report.add_bool(
        "monotonicity",
        "expected_gain_nondecreasing",
        expected_gain_monotone_check(d, gain, MONOTONE_HORIZON),
    );

    if !s.contains(gain) {
        report.warn(format!(
            "gain {} is outside the survival interval ({}, {}); ruin has positive probability",
            format_significant(gain),
            format_significant(s.lower),
            format_significant(s.upper),
        ));
    }
    Ok(report)
}

/// Reports the true optimality gap of the (saturated) approximate gain
/// together with its Jensen and linear-fractional vertex bounds, checking
/// the sandwich ordering.
pub fn cmd_gap(
    d: &ReturnDistribution,
    k_approx_override: Option<f64>,
    margin: f64,
) -> Result<Report> {
    let solved = solve_exact(d, Constraint::unbounded())?;
    let s = survival_interval(d);
    let k_approx = match k_approx_override {
        Some(k) => k,
        None => saturate(kelly_taylor(d)?, &s, margin),
    };

    let g_approx = log_growth(d, k_approx);
    let true_gap = solved.g_star - g_approx;
    let jensen = gap_upper_bound(d, solved.k_star, k_approx)?;
    let (x_min, x_max) = d.support_bounds();
    let vertex = fractional_vertex_bound(solved.k_star, k_approx, x_min, x_max)?;
    let log_vertex = vertex.ln();
    let sandwich_ok =
        true_gap >= -1e-10 && jensen >= true_gap - 1e-10 && log_vertex >= jensen - 1e-10;

    let mut report = Report::new();
    add_distribution_section(&mut report, d);
    add_survival_section(&mut report, d);
    report.add_num("gap", "k_star", solved.k_star);
    report.add_num("gap", "k_approx", k_approx);
    report.add_num("gap", "g_star", solved.g_star);
    report.add_num("gap", "g_approx", g_approx);
    report.add_num("gap", "true_gap", true_gap);
    report.add_num("gap", "jensen_bound", jensen);
    report.add_num("gap", "vertex_bound", vertex);
    report.add_num("gap", "log_vertex_bound", log_vertex);
    report.add_bool("gap", "sandwich_ok", sandwich_ok);
    Ok(report)
}

/// Runs the Monte Carlo engine and reports empirical statistics next to the
/// closed forms, with standard errors for the comparable pairs. Also returns
/// the per-path outcomes for optional CSV export.
pub fn cmd_simulate(
    d: &ReturnDistribution,
    cfg: &SimulationConfig,
) -> Result<(Report, Vec<PathOutcome>)> {
    let outcomes = run_paths(d, cfg);
    let result = summarize(cfg, &outcomes);
    let s = survival_interval(d);

    let mut report = Report::new();
    add_distribution_section(&mut report, d);
    report.add_num("config", "k", cfg.gain);
    report.add_int("config", "n", cfg.horizon as u64);
    report.add_num("config", "v0", cfg.v0);
    report.add_int("config", "paths", cfg.paths);
    report.add_int("config", "seed", cfg.seed);

    report.add_num("survival", "lower", s.lower);
    report.add_num("survival", "upper", s.upper);
    report.add_bool("survival", "gain_inside", s.contains(cfg.gain));

    report.add_num("empirical", "gain_mean", result.empirical_gain_mean);
    report.add_num("empirical", "gain_variance", result.empirical_gain_variance);
    report.add_num(
        "empirical",
        "log_growth_mean",
        result.empirical_log_growth_mean,
    );
    report.add_num(
        "empirical",
        "log_growth_variance",
        result.empirical_log_growth_variance,
    );
    report.add_num("empirical", "min_account_value", result.min_account_value);
    report.add_int("empirical", "ruin_paths", result.ruin_paths);
    report.add_num(
        "empirical",
        "ruin_fraction",
        result.ruin_paths as f64 / cfg.paths as f64,
    );
    for (level, value) in [1u32, 25, 50, 75, 99].iter().zip(result.terminal_quantiles) {
        report.add_num("empirical", &format!("terminal_q{level:02}"), value);
    }

    let closed_mean = expected_gain(d, cfg.gain, cfg.horizon, cfg.v0);
    let closed_var = gain_variance(d, cfg.gain, cfg.horizon, cfg.v0);
    report.add_num("closed_form", "expected_gain", closed_mean);
    report.add_num("closed_form", "gain_variance", closed_var);
    report.add_num("closed_form", "log_growth", log_growth(d, cfg.gain));
    let closed_log_var = log_growth_variance(d, cfg.gain, cfg.horizon).ok();
    match closed_log_var {
        Some(v) => report.add_num("closed_form", "log_growth_variance", v),
        None => report.add(
            "closed_form",
            "log_growth_variance",
            "unavailable (outside survival interval)",
        ),
    }

    let se_mean = (closed_var / cfg.paths as f64).sqrt();
    report.add_num(
        "comparison",
        "gain_mean_error",
        result.empirical_gain_mean - closed_mean,
    );
    report.add_num("comparison", "gain_mean_stderr", se_mean);
    if se_mean > 0.0 {
        report.add_num(
            "comparison",
            "gain_mean_z",
            (result.empirical_gain_mean - closed_mean) / se_mean,
        );
    }
    if let Some(v) = closed_log_var {
        let se_log = (v / cfg.paths as f64).sqrt() / cfg.horizon as f64;
        let error = result.empirical_log_growth_mean - log_growth(d, cfg.gain);
        report.add_num("comparison", "log_growth_mean_error", error);
        report.add_num("comparison", "log_growth_mean_stderr", se_log);
        if se_log > 0.0 {
            report.add_num("comparison", "log_growth_mean_z", error / se_log);
        }
    }

    if !s.contains(cfg.gain) {
        report.warn(format!(
            "gain {} is outside the survival interval ({}, {}); ruin has positive probability",
            format_significant(cfg.gain),
            format_significant(s.lower),
            format_significant(s.upper),
        ));
    }
    Ok((report, outcomes))
}

/// Renders per-path outcomes as CSV with the header
/// `path,terminal_value,ruined`.
pub fn paths_csv(outcomes: &[PathOutcome]) -> String {
    let mut out = String::from("path,terminal_value,ruined\n");
    for (i, o) in outcomes.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{}\n",
            i,
            format_significant(o.terminal_value),
            o.ruined
        ));
    }
    out
}
