//! Subcommand implementations. Each returns the records to print.

use std::f64::consts::PI;
use std::time::Instant;

use rapsi::bernoulli::shared_table;
use rapsi::oracles::{psi_oracle, OracleConfig};
use rapsi::series::{
    csch2_sum, gamma_any_x, gamma_at_integer, lambert_identity_residual, lambert_sum,
    log_coefficient_residual, psi_prime_ramanujan, psi_ramanujan, zeta_odd, zeta_odd_general,
    zeta_odd_limit_residual,
};
use rapsi::{plan_with_guard, EvalParams, ModularPair, DEFAULT_GUARD_DELTA};

use crate::report::{Input, Report};
use crate::CliError;

/// Environment variable overriding the default guard band half-width.
pub const GUARD_ENV: &str = "RAPSI_GUARD_DELTA";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub guard_delta: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            guard_delta: DEFAULT_GUARD_DELTA,
        }
    }
}

impl Settings {
    /// Reads [`GUARD_ENV`] if set.
    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var(GUARD_ENV) {
            Ok(raw) => {
                let delta: f64 = raw.trim().parse().map_err(|_| {
                    CliError::Input(format!("{GUARD_ENV} must be a number, got `{raw}`"))
                })?;
                if !(delta > 0.0 && delta < 0.25) {
                    return Err(CliError::Input(format!(
                        "{GUARD_ENV} must lie in (0, 0.25), got {delta}"
                    )));
                }
                Ok(Settings { guard_delta: delta })
            }
            Err(_) => Ok(Settings::default()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Ramanujan,
    Classical,
}

fn positive_x(x: f64) -> Result<(), CliError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(CliError::Input(format!("x must satisfy x > 0, got {x}")))
    }
}

/// Planned parameters; `terms` pins the outer series to exactly that many
/// terms.
pub fn params_for(
    tol: f64,
    x: f64,
    terms: Option<u64>,
    settings: &Settings,
) -> Result<EvalParams, CliError> {
    let p = plan_with_guard(tol, x, settings.guard_delta)?;
    match terms {
        Some(k) => Ok(p.with_k_terms(k)?.exact()),
        None => Ok(p),
    }
}

pub fn psi(
    x: f64,
    tol: f64,
    method: Method,
    terms: Option<u64>,
    settings: &Settings,
) -> Result<Report, CliError> {
    positive_x(x)?;
    let start = Instant::now();
    match method {
        Method::Ramanujan => {
            let p = params_for(tol, x, terms, settings)?;
            let v = psi_ramanujan(x, &p)?;
            Ok(Report::new("psi", Input::Real(x), "ramanujan")
                .series(&v)
                .tol(tol)
                .elapsed(start))
        }
        Method::Classical => {
            let cfg = OracleConfig {
                target_tolerance: tol,
                ..OracleConfig::default()
            };
            let v = psi_oracle(x, &cfg)?;
            Ok(Report::new("psi", Input::Real(x), "classical")
                .value(v, tol)
                .tol(tol)
                .elapsed(start))
        }
    }
}

pub fn psi_prime(
    x: f64,
    tol: f64,
    terms: Option<u64>,
    settings: &Settings,
) -> Result<Report, CliError> {
    positive_x(x)?;
    let start = Instant::now();
    let p = params_for(tol, x, terms, settings)?;
    let v = psi_prime_ramanujan(x, &p)?;
    Ok(Report::new("psi_prime", Input::Real(x), "ramanujan")
        .series(&v)
        .tol(tol)
        .elapsed(start))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaMode {
    Integer(u64),
    AnyX(f64),
}

/// γ plus the ψ-side value it was extracted from.
pub fn gamma(
    mode: GammaMode,
    tol: f64,
    terms: Option<u64>,
    settings: &Settings,
) -> Result<Vec<Report>, CliError> {
    let start = Instant::now();
    let (g, input, intermediate) = match mode {
        GammaMode::Integer(m) => {
            if m == 0 {
                return Err(CliError::Input("m must be a positive integer".into()));
            }
            let p = params_for(tol, m as f64, terms, settings)?;
            (gamma_at_integer(m, &p)?, Input::Integer(m), "psi")
        }
        GammaMode::AnyX(x) => {
            positive_x(x)?;
            let p = params_for(tol, x, terms, settings)?;
            let g = gamma_any_x(x, &p).map_err(|e| match e {
                rapsi::Error::GuardBand { x, m, delta } => CliError::Input(format!(
                    "x = {x} lies within {delta} of the integer {m}; use `gamma --m {m}` instead"
                )),
                e => e.into(),
            })?;
            (g, Input::Real(x), "re_psi_one_plus_ix")
        }
    };
    let method = g.source.as_str();
    let mut reports = vec![
        Report::new(intermediate, input, method).value(g.intermediate, g.error_estimate),
        Report::new("euler_gamma", input, method).value(g.value, g.error_estimate),
    ];
    let elapsed = start.elapsed().as_nanos() as u64;
    for r in &mut reports {
        r.k_used = g.k_used;
        r.n_used = g.n_used;
        r.tol = Some(tol);
        r.elapsed_nanoseconds = elapsed;
    }
    Ok(reports)
}

/// Parameters for the k-only series (ζ, Lambert and csch² sums).
fn k_params(tol: f64, terms: Option<u64>) -> Result<EvalParams, CliError> {
    let p = EvalParams::new(tol, 64, 16, DEFAULT_GUARD_DELTA)?;
    match terms {
        Some(k) => Ok(p.with_k_terms(k)?.exact()),
        None => Ok(p),
    }
}

pub fn zeta_odd_cmd(
    n: u64,
    tol: f64,
    alpha: Option<f64>,
    terms: Option<u64>,
) -> Result<Report, CliError> {
    if n == 0 {
        return Err(CliError::Input(
            "N must be at least 1; the N = 0 limit identity is checked by `verify --suite identities`"
                .into(),
        ));
    }
    let start = Instant::now();
    let p = k_params(tol, terms)?;
    let table = shared_table();
    let (v, method) = match alpha {
        Some(a) => {
            let pair = ModularPair::from_alpha(a)
                .map_err(|_| CliError::Input(format!("alpha must be positive, got {a}")))?;
            (zeta_odd_general(n, &pair, table, &p)?, "modular_pair")
        }
        None => (zeta_odd(n, table, &p)?, "bernoulli_lambert"),
    };
    Ok(Report::new("zeta_odd", Input::Integer(2 * n + 1), method)
        .series(&v)
        .tol(tol)
        .elapsed(start))
}

/// The hyperbolic and Lambert sums with their closed-form targets.
pub fn identities(terms: Option<u64>) -> Result<Vec<Report>, CliError> {
    let k = terms.unwrap_or(10);
    let p = k_params(1e-15, Some(k))?;
    let table = shared_table();
    let mut out = Vec::new();

    let start = Instant::now();
    let s = csch2_sum(&p);
    out.push(
        Report::new("csch2_sum", Input::Integer(k), "direct")
            .series(&s)
            .check(s.value - (1.0 / 6.0 - 1.0 / (2.0 * PI)), 1e-15 + s.error_estimate)
            .elapsed(start),
    );

    let start = Instant::now();
    let s = lambert_sum(1, &p);
    out.push(
        Report::new("lambert_sum_power_1", Input::Integer(k), "direct")
            .series(&s)
            .check(s.value - (1.0 / 24.0 - 1.0 / (8.0 * PI)), 1e-15 + s.error_estimate)
            .elapsed(start),
    );

    for m in [3u64, 5] {
        let start = Instant::now();
        let r = lambert_identity_residual(m, table, &p)?;
        let mut rep = Report::new(format!("lambert_sum_power_{}", 2 * m - 1), Input::Integer(k), "direct")
            .value(r.target + r.residual, r.error_estimate)
            .check(r.residual, 1e-14)
            .elapsed(start);
        rep.k_used = k;
        out.push(rep);
        out.push(
            Report::new(format!("lambert_integral_power_{}", 2 * m - 1), Input::Integer(m), "quadrature")
                .value(r.quadrature, 1e-10)
                .check(r.quadrature - r.target, 1e-10),
        );
    }

    let start = Instant::now();
    let r = zeta_odd_limit_residual(table, &p)?;
    out.push(
        Report::new("odd_zeta_limit_identity", Input::Integer(0), "bernoulli_csch2")
            .series(&r)
            .check(r.value, 1e-13)
            .elapsed(start),
    );

    let start = Instant::now();
    let r = log_coefficient_residual(&p)?;
    out.push(
        Report::new("log_coefficient_identity", Input::Integer(k), "csch2")
            .series(&r)
            .check(r.value, 1e-13)
            .elapsed(start),
    );
    Ok(out)
}
