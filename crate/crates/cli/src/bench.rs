//! Classical partial sums against the planned Ramanujan evaluation.

use std::time::Instant;

use rapsi::series::psi_ramanujan;
use rapsi::EULER_GAMMA;

use crate::commands::{params_for, Settings};
use crate::report::{Input, Report};
use crate::CliError;

/// Largest number of terms the classical series is allowed.
pub const CLASSICAL_CAP: u64 = 100_000_000;

pub const DEFAULT_TOLS: [f64; 4] = [1e-3, 1e-6, 1e-9, 1e-12];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalSum {
    pub value: f64,
    pub terms: u64,
    pub error_bound: f64,
    pub cap_reached: bool,
}

/// ψ(x+1) = −γ + Σ_{n≥1} x/(n(n+x)). The omitted tail is below
/// ∫_N^∞ x/(t(t+x)) dt = ln(1 + x/N), so N = ⌈x/expm1(tol)⌉ suffices.
pub fn classical_series(x: f64, tol: f64) -> ClassicalSum {
    let needed = (x / tol.exp_m1()).ceil().max(1.0);
    let (terms, cap_reached) = if needed > CLASSICAL_CAP as f64 {
        (CLASSICAL_CAP, true)
    } else {
        (needed as u64, false)
    };
    let mut sum = 0.0;
    for n in 1..=terms {
        let n = n as f64;
        sum += x / (n * (n + x));
    }
    let rounding = terms as f64 * f64::EPSILON * sum;
    ClassicalSum {
        value: sum - EULER_GAMMA,
        terms,
        error_bound: (x / terms as f64).ln_1p() + rounding,
        cap_reached,
    }
}

/// Two records per tolerance: Ramanujan then classical.
pub fn bench(x: f64, tols: &[f64], settings: &Settings) -> Result<Vec<Report>, CliError> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(CliError::Input(format!("x must satisfy x > 0, got {x}")));
    }
    let m = x.round();
    if m >= 1.0 && (x - m).abs() < settings.guard_delta {
        return Err(CliError::Input(format!(
            "x = {x} lies within {} of {m}; benchmark at x = {m} or outside the guard band",
            settings.guard_delta
        )));
    }
    let mut out = Vec::with_capacity(2 * tols.len());
    for &tol in tols {
        let start = Instant::now();
        let v = psi_ramanujan(x, &params_for(tol, x, None, settings)?)?;
        out.push(
            Report::new("psi", Input::Real(x), "ramanujan")
                .series(&v)
                .tol(tol)
                .elapsed(start),
        );

        let start = Instant::now();
        let c = classical_series(x, tol);
        let mut r = Report::new("psi", Input::Real(x), "classical_series")
            .value(c.value, c.error_bound)
            .tol(tol)
            .elapsed(start);
        r.n_used = c.terms;
        r.cap_reached = Some(c.cap_reached);
        out.push(r);
    }
    Ok(out)
}
