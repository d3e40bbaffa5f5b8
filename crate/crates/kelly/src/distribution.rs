//! Finite discrete return distributions and their exact moments.
//!
//! The per-stage return is modeled as a finite list of `(value, probability)`
//! atoms, so every expectation downstream is an exact finite sum. Continuous
//! data enters through [`estimate_from_samples`] or by binning into atoms
//! before construction.

use crate::error::{Error, Result};

/// Absolute tolerance for the total-probability-mass check.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// One support point of a return distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    /// Return per unit bet.
    pub value: f64,
    /// Probability mass, strictly positive.
    pub probability: f64,
}

/// A validated finite discrete law for the per-stage return.
///
/// Invariants, enforced at construction:
/// - at least one atom
/// - atom values finite, pairwise distinct, sorted ascending
/// - probabilities strictly positive and summing to 1 within [`MASS_TOLERANCE`]
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnDistribution {
    atoms: Vec<Atom>,
}

impl ReturnDistribution {
    /// Builds a distribution from `(value, probability)` pairs.
    ///
    /// Pairs with bit-equal values are merged by summing their probabilities
    /// before the distinctness invariant is checked; there is no fuzzy
    /// merging of nearby values.
    pub fn from_atoms<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut atoms: Vec<Atom> = Vec::new();
        for (value, probability) in pairs {
            if !value.is_finite() {
                return Err(Error::NonFiniteValue { value });
            }
            if !probability.is_finite() || probability <= 0.0 {
                return Err(Error::NonPositiveProbability { probability });
            }
            atoms.push(Atom { value, probability });
        }
        if atoms.is_empty() {
            return Err(Error::EmptyDistribution);
        }

        atoms.sort_by(|a, b| a.value.total_cmp(&b.value));

        // Merge exact duplicates.
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for atom in atoms {
            match merged.last_mut() {
                Some(last) if last.value == atom.value => {
                    last.probability += atom.probability;
                }
                _ => merged.push(atom),
            }
        }

        let total: f64 = merged.iter().map(|a| a.probability).sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::ProbabilityMassNotOne { total });
        }

        Ok(ReturnDistribution { atoms: merged })
    }

    /// The atoms, sorted ascending by value.
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// E[X].
    pub fn mean(&self) -> f64 {
        self.atoms.iter().map(|a| a.probability * a.value).sum()
    }

    /// E[X^2].
    pub fn second_moment(&self) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.probability * a.value * a.value)
            .sum()
    }

    /// var(X), computed as the central second moment so it is never negative.
    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.atoms
            .iter()
            .map(|a| {
                let d = a.value - mean;
                a.probability * d * d
            })
            .sum()
    }

    /// `(X_min, X_max)`: smallest and largest support point.
    ///
    /// No sign condition is imposed here; operations that need a mixed-sign
    /// support check it themselves.
    pub fn support_bounds(&self) -> (f64, f64) {
        (
            self.atoms.first().expect("non-empty").value,
            self.atoms.last().expect("non-empty").value,
        )
    }

    /// Parses the distribution text format.
    ///
    /// The first line must be exactly `value,probability`; every following
    /// line is either blank, a `#` comment, or two decimal literals separated
    /// by a comma. The trailing newline is optional.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header.trim_end() == "value,probability" => {}
            Some((_, header)) => {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("expected header `value,probability`, got `{header}`"),
                })
            }
            None => {
                return Err(Error::Parse {
                    line: 1,
                    message: "empty file".to_string(),
                })
            }
        }

        let mut pairs = Vec::new();
        for (idx, raw) in lines {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (value_str, prob_str) = line.split_once(',').ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected `value,probability`, got `{line}`"),
            })?;
            let value: f64 = value_str.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid value `{}`", value_str.trim()),
            })?;
            let probability: f64 = prob_str.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid probability `{}`", prob_str.trim()),
            })?;
            pairs.push((value, probability));
        }
        Self::from_atoms(pairs)
    }

    /// Renders the distribution in the text format accepted by
    /// [`ReturnDistribution::from_csv_str`].
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("value,probability\n");
        for atom in &self.atoms {
            out.push_str(&format!("{},{}\n", atom.value, atom.probability));
        }
        out
    }
}

/// Sample mean and unbiased sample variance of observed returns.
///
/// Returns `(mu_hat, sigma_sq_hat)` with `mu_hat = (1/N) Σ x_k` and
/// `sigma_sq_hat = (1/(N-1)) Σ (x_k - mu_hat)^2`. Needs at least two samples.
pub fn estimate_from_samples(samples: &[f64]) -> Result<(f64, f64)> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::InsufficientSamples { count: n });
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let ss: f64 = samples
        .iter()
        .map(|x| {
            let d = x - mean;
            d * d
        })
        .sum();
    Ok((mean, ss / (n - 1) as f64))
}
