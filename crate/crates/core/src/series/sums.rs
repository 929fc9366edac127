//! Exponentially convergent k-series and their truncation.

use std::f64::consts::PI;

use super::{bose, csch2, EvalParams, SeriesValue, Truncation, ROUNDING};
use crate::planner::{csch2_tail, lambert_tail};

/// A truncated k-series with the bound on what was left out.
#[derive(Debug, Clone, Copy)]
pub(crate) struct KSum {
    pub value: f64,
    pub abs_sum: f64,
    pub used: u64,
    pub tail: f64,
}

impl KSum {
    pub fn error(&self) -> f64 {
        self.tail + ROUNDING * self.abs_sum
    }
}

/// Sums `term(1), term(2), …` in ascending order. Under
/// [`Truncation::Envelope`] summation stops once `tail(k+1) ≤ tol/10`;
/// `tail(first)` must bound `Σ_{k≥first} |term(k)|`.
pub(crate) fn k_series(
    params: &EvalParams,
    term: impl Fn(u64) -> f64,
    tail: impl Fn(u64) -> f64,
) -> KSum {
    let budget = 0.1 * params.tol;
    let mut value = 0.0;
    let mut abs_sum = 0.0;
    let mut used = 0;
    for k in 1..=params.k_terms {
        let t = term(k);
        value += t;
        abs_sum += t.abs();
        used = k;
        if params.truncation == Truncation::Envelope && tail(k + 1) <= budget {
            break;
        }
    }
    KSum {
        value,
        abs_sum,
        used,
        tail: tail(used + 1),
    }
}

fn exact(params: &EvalParams) -> EvalParams {
    EvalParams {
        truncation: Truncation::Exact,
        ..*params
    }
}

fn to_value(s: KSum) -> SeriesValue {
    SeriesValue {
        value: s.value,
        error_estimate: s.error(),
        k_used: s.used,
        n_used: 0,
    }
}

/// `Σ_{k=1}^{k_terms} 1/sinh²(πk)`; the full series equals `1/6 − 1/(2π)`.
pub fn csch2_sum(params: &EvalParams) -> SeriesValue {
    to_value(csch2_series(0, PI, &exact(params)))
}

/// `Σ_{k=1}^{k_terms} k^power/(e^{2πk} − 1)`.
pub fn lambert_sum(power: i32, params: &EvalParams) -> SeriesValue {
    to_value(lambert_series(power, PI, &exact(params)))
}

/// `Σ k^power/sinh²(rate·k)`.
pub(crate) fn csch2_series(power: i32, rate: f64, params: &EvalParams) -> KSum {
    k_series(
        params,
        |k| (k as f64).powi(power) * csch2(rate * k as f64),
        |first| csch2_tail(first, rate, power),
    )
}

/// `Σ k^power/(e^{2·rate·k} − 1)`.
pub(crate) fn lambert_series(power: i32, rate: f64, params: &EvalParams) -> KSum {
    k_series(
        params,
        |k| (k as f64).powi(power) * bose(2.0 * rate * k as f64),
        |first| lambert_tail(first, rate, power),
    )
}
