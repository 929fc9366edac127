//! One record per evaluated quantity, as JSON lines or a plain table.

use std::io::{self, Write};

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Input {
    Integer(u64),
    Real(f64),
}

impl std::fmt::Display for Input {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Input::Integer(n) => write!(f, "{n}"),
            Input::Real(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub quantity: String,
    pub input: Input,
    #[serde(serialize_with = "seventeen_digits")]
    pub value: f64,
    pub abs_error_estimate: f64,
    pub k_used: u64,
    pub n_used: u64,
    pub method: String,
    pub elapsed_nanoseconds: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub allowed: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap_reached: Option<bool>,
}

impl Report {
    pub fn new(quantity: impl Into<String>, input: Input, method: impl Into<String>) -> Self {
        Report {
            quantity: quantity.into(),
            input,
            value: f64::NAN,
            abs_error_estimate: 0.0,
            k_used: 0,
            n_used: 0,
            method: method.into(),
            elapsed_nanoseconds: 0,
            tol: None,
            passed: None,
            residual: None,
            allowed: None,
            cap_reached: None,
        }
    }

    pub fn series(mut self, v: &rapsi::SeriesValue) -> Self {
        self.value = v.value;
        self.abs_error_estimate = v.error_estimate;
        self.k_used = v.k_used;
        self.n_used = v.n_used;
        self
    }

    pub fn value(mut self, value: f64, error: f64) -> Self {
        self.value = value;
        self.abs_error_estimate = error;
        self
    }

    pub fn elapsed(mut self, start: std::time::Instant) -> Self {
        self.elapsed_nanoseconds = start.elapsed().as_nanos() as u64;
        self
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tol = Some(tol);
        self
    }

    /// Marks the record as a check: `passed` iff `|residual| ≤ allowed`.
    pub fn check(mut self, residual: f64, allowed: f64) -> Self {
        self.passed = Some(residual.abs() <= allowed);
        self.residual = Some(residual);
        self.allowed = Some(allowed);
        self
    }
}

/// Writes the value with 17 significant digits, enough to round-trip any
/// double. Non-finite values have no JSON form and become `null`.
fn seventeen_digits<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if !v.is_finite() {
        return s.serialize_none();
    }
    let raw = RawValue::from_string(format!("{v:.16e}")).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Plain,
}

const COLUMNS: [&str; 13] = [
    "quantity",
    "input",
    "value",
    "abs_error_estimate",
    "k_used",
    "n_used",
    "method",
    "elapsed_nanoseconds",
    "tol",
    "passed",
    "residual",
    "allowed",
    "cap_reached",
];

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_else(|| "-".into())
}

fn plain_row(r: &Report) -> String {
    [
        r.quantity.clone(),
        r.input.to_string(),
        format!("{:.16e}", r.value),
        format!("{:.3e}", r.abs_error_estimate),
        r.k_used.to_string(),
        r.n_used.to_string(),
        r.method.clone(),
        r.elapsed_nanoseconds.to_string(),
        opt(r.tol.map(|t| format!("{t:e}"))),
        opt(r.passed),
        opt(r.residual.map(|t| format!("{t:.3e}"))),
        opt(r.allowed.map(|t| format!("{t:e}"))),
        opt(r.cap_reached),
    ]
    .join("\t")
}

/// Writes the records, one per line. The plain format is a tab separated
/// table with a header row.
pub fn emit(out: &mut impl Write, reports: &[Report], format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in reports {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        Format::Plain => {
            writeln!(out, "{}", COLUMNS.join("\t"))?;
            for r in reports {
                writeln!(out, "{}", plain_row(r))?;
            }
        }
    }
    Ok(())
}
