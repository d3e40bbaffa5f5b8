//! Plain-text report rendering: `key = value` lines grouped under
//! `[section]` headers, with decimal values carrying 12 significant digits.
//!
//! The format is deliberately line-oriented and stable so reports can be
//! diffed and golden-tested byte for byte.

use std::fmt;

/// Formats a float with 12 significant digits, printf `%g` style: fixed
/// notation for moderate exponents, scientific otherwise, trailing zeros
/// trimmed. `0`, `inf`, `-inf`, and `nan` render as those words.
pub fn format_significant(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }

    // Rounded scientific form gives exact digits and exponent.
    let sci = format!("{:.*e}", 11, x);
    let (mantissa, exp_str) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp_str.parse().expect("valid exponent");

    if !(-4..12).contains(&exp) {
        let mantissa = trim_fraction(mantissa);
        return format!("{mantissa}e{exp}");
    }

    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let digits: String = digits.chars().filter(|c| *c != '.').collect();

    let fixed = if exp >= 0 {
        let split = (exp + 1) as usize;
        format!("{sign}{}.{}", &digits[..split], &digits[split..])
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    };
    trim_fraction(&fixed)
}

fn trim_fraction(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}

struct Section {
    title: String,
    entries: Vec<(String, String)>,
}

/// An ordered collection of key-value sections plus free-form warnings.
///
/// Warnings never alter the numeric entries; they are appended after the
/// sections on output and do not affect the process exit code.
#[derive(Default)]
pub struct Report {
    sections: Vec<Section>,
    warnings: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    /// Adds `key = value` under `section`, creating the section on first
    /// use. A key may appear at most once per section.
    pub fn add(&mut self, section: &str, key: &str, value: impl Into<String>) {
        let section = match self.sections.iter_mut().find(|s| s.title == section) {
            Some(s) => s,
            None => {
                self.sections.push(Section {
                    title: section.to_string(),
                    entries: Vec::new(),
                });
                self.sections.last_mut().expect("just pushed")
            }
        };
        assert!(
            section.entries.iter().all(|(k, _)| k != key),
            "duplicate key `{key}` in section `{}`",
            section.title
        );
        section.entries.push((key.to_string(), value.into()));
    }

    pub fn add_num(&mut self, section: &str, key: &str, value: f64) {
        self.add(section, key, format_significant(value));
    }

    pub fn add_int(&mut self, section: &str, key: &str, value: u64) {
        self.add(section, key, value.to_string());
    }

    pub fn add_bool(&mut self, section: &str, key: &str, value: bool) {
        self.add(section, key, value.to_string());
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    /// Value previously stored under `section`/`key`, for tests.
    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .iter()
            .find(|s| s.title == section)?
            .entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, section) in self.sections.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "[{}]", section.title)?;
            for (key, value) in &section.entries {
                writeln!(f, "{key} = {value}")?;
            }
        }
        if !self.warnings.is_empty() {
            writeln!(f)?;
            for warning in &self.warnings {
                writeln!(f, "warning: {warning}")?;
            }
        }
        Ok(())
    }
}
