//! `kelly` — analyze and simulate constant-fraction betting on a finite
//! discrete return distribution.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kelly::growth::Constraint;
use kelly::simulate::SimulationConfig;
use kelly::ReturnDistribution;
use kelly_cli::commands;

#[derive(Parser)]
#[command(
    name = "kelly",
    version,
    about = "Log-optimal betting fractions, approximations, risk analytics, and Monte Carlo simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConstraintArgs {
    /// Lower bound on the feedback gain (default: unconstrained)
    #[arg(long, conflicts_with = "cash")]
    lo: Option<f64>,
    /// Upper bound on the feedback gain (default: unconstrained)
    #[arg(long, conflicts_with = "cash")]
    hi: Option<f64>,
    /// Shorthand for the cash-financed constraint [-1, 1]
    #[arg(long)]
    cash: bool,
}

impl ConstraintArgs {
    fn constraint(&self) -> Constraint {
        if self.cash {
            Constraint::cash()
        } else {
            Constraint::interval(
                self.lo.unwrap_or(f64::NEG_INFINITY),
                self.hi.unwrap_or(f64::INFINITY),
            )
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Maximize the expected log-growth over the feasible gains
    Solve {
        /// Distribution file (`value,probability` per line)
        dist_file: PathBuf,
        #[command(flatten)]
        constraint: ConstraintArgs,
    },
    /// Closed-form approximate gains and their survival saturation
    Approx {
        dist_file: PathBuf,
        /// Also report the variance-denominator (continuous-time) gain
        #[arg(long)]
        merton: bool,
        /// Skip the saturated value
        #[arg(long)]
        no_saturate: bool,
        /// Relative saturation margin
        #[arg(long, default_value_t = 1e-9)]
        margin: f64,
    },
    /// Closed-form gain, risk, and bound analytics for a given gain
    Analyze {
        dist_file: PathBuf,
        /// Feedback gain to analyze
        #[arg(long)]
        k: f64,
        /// Betting horizon in stages
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Initial account value
        #[arg(long, default_value_t = 1.0)]
        v0: f64,
    },
    /// Optimality gap of the approximate gain, with Jensen and vertex bounds
    Gap {
        dist_file: PathBuf,
        /// Use this gain instead of the saturated Taylor optimum
        #[arg(long = "k-approx")]
        k_approx: Option<f64>,
        /// Relative saturation margin for the default approximate gain
        #[arg(long, default_value_t = 1e-9)]
        margin: f64,
    },
    /// Monte Carlo simulation against the closed forms
    Simulate {
        dist_file: PathBuf,
        /// Feedback gain to simulate
        #[arg(long)]
        k: f64,
        /// Betting horizon in stages
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Initial account value
        #[arg(long, default_value_t = 1.0)]
        v0: f64,
        /// Number of sample paths
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        paths: u64,
        /// Seed for the deterministic generator
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write per-path terminal values to this CSV file
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn load_distribution(path: &PathBuf) -> Result<ReturnDistribution, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    ReturnDistribution::from_csv_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn validate_positive(value: f64, what: &str) -> Result<(), String> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(format!("{what} must be positive and finite, got {value}"))
    }
}

fn validate_finite(value: f64, what: &str) -> Result<(), String> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(format!("{what} must be finite, got {value}"))
    }
}

fn run() -> Result<(), String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve {
            dist_file,
            constraint,
        } => {
            if let Some(lo) = constraint.lo {
                if lo.is_nan() {
                    return Err("--lo must be a number".to_string());
                }
            }
            if let Some(hi) = constraint.hi {
                if hi.is_nan() {
                    return Err("--hi must be a number".to_string());
                }
            }
            let d = load_distribution(&dist_file)?;
            let report =
                commands::cmd_solve(&d, constraint.constraint()).map_err(|e| e.to_string())?;
            print!("{report}");
        }
        Command::Approx {
            dist_file,
            merton,
            no_saturate,
            margin,
        } => {
            validate_positive(margin, "--margin")?;
            let d = load_distribution(&dist_file)?;
            let report =
                commands::cmd_approx(&d, merton, no_saturate, margin).map_err(|e| e.to_string())?;
            print!("{report}");
        }
        Command::Analyze {
            dist_file,
            k,
            n,
            v0,
        } => {
            validate_finite(k, "--k")?;
            validate_positive(v0, "--v0")?;
            let d = load_distribution(&dist_file)?;
            let report = commands::cmd_analyze(&d, k, n, v0).map_err(|e| e.to_string())?;
            print!("{report}");
        }
        Command::Gap {
            dist_file,
            k_approx,
            margin,
        } => {
            if let Some(k) = k_approx {
                validate_finite(k, "--k-approx")?;
            }
            validate_positive(margin, "--margin")?;
            let d = load_distribution(&dist_file)?;
            let report = commands::cmd_gap(&d, k_approx, margin).map_err(|e| e.to_string())?;
            print!("{report}");
        }
        Command::Simulate {
            dist_file,
            k,
            n,
            v0,
            paths,
            seed,
            csv,
        } => {
            validate_finite(k, "--k")?;
            validate_positive(v0, "--v0")?;
            let d = load_distribution(&dist_file)?;
            let cfg = SimulationConfig {
                gain: k,
                horizon: n,
                v0,
                paths,
                seed,
            };
            let (report, outcomes) = commands::cmd_simulate(&d, &cfg).map_err(|e| e.to_string())?;
            print!("{report}");
            if let Some(path) = csv {
                fs::write(&path, commands::paths_csv(&outcomes))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
