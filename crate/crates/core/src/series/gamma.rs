//! Euler's constant from the ψ formula.

use std::f64::consts::PI;

use super::double::double_series_s;
use super::psi::{cot_partner, log_csch2_sum};
use super::sums::k_series;
use super::{
    bose, check_x, csch2, guard_center, EulerGamma, EvalParams, GammaSource, SeriesValue,
    GAMMA_CONSISTENCY, ROUNDING,
};
use crate::error::{Error, Result};
use crate::oracles::{inner_harmonic_sum, oracle_euler_gamma};
use crate::planner::lambert_tail;

fn check_consistent(g: EulerGamma) -> Result<EulerGamma> {
    let residual = g.value - oracle_euler_gamma();
    if residual.abs() > GAMMA_CONSISTENCY {
        return Err(Error::Inconsistent {
            check: "euler gamma against the recurrence oracle",
            residual,
            allowed: GAMMA_CONSISTENCY,
        });
    }
    Ok(g)
}

/// γ from the limit of the ψ formula at the positive integer `m`:
/// the singular terms are replaced by
/// `(π/2)(log π − log 2m³ − 1)/sinh²(πm) + 1/(2m(e^{2πm} − 1))`, the k = m
/// terms are dropped from the first two k-series, and the double series
/// reduces to `2π Σ_k k·e^{−2πkm}(γ + Re ψ(1+ik))`. The result is ψ(m+1),
/// and `γ = H_m − ψ(m+1)`.
pub fn gamma_at_integer(m: u64, params: &EvalParams) -> Result<EulerGamma> {
    if m == 0 {
        return Err(Error::invalid("m", "must be a positive integer"));
    }
    params.validate()?;
    let mf = m as f64;
    let lead = PI / 3.0 * mf.ln() + 0.5 / mf - 0.25 / (PI * mf * mf);
    let d = cot_partner(mf, params, Some(m));
    let reg = 0.5 * PI * (PI.ln() - (2.0 * mf.powi(3)).ln() - 1.0) * csch2(PI * mf);
    let e = log_csch2_sum(mf, params, Some(m));
    let limit = bose(2.0 * PI * mf) / (2.0 * mf);
    let s = double_series_s(mf, params)?;
    let psi = lead + d.value + reg - 0.5 * PI * e.value + limit - s.value;
    let harmonic: f64 = (1..=m).map(|j| 1.0 / j as f64).sum();
    let value = harmonic - psi;
    let error = d.error()
        + 0.5 * PI * e.error()
        + s.error_estimate
        + ROUNDING * (lead.abs() + d.value.abs() + reg.abs() + e.value.abs() + harmonic + psi.abs())
        + ROUNDING * mf.ln().max(1.0) * harmonic;
    check_consistent(EulerGamma {
        value,
        source: GammaSource::IntegerLimit,
        intermediate: psi,
        error_estimate: error,
        k_used: d.used.max(e.used).max(s.k_used),
        n_used: 0,
    })
}

/// Re ψ(1+ix) for `x > 0` away from the integers:
/// `(π/3)log x + 1/(4πx²) + πlog|2sin πx|/(2sinh²πx)
///  + Σ_k 2k/((k² + x²)(e^{2πk} − 1)) − (π/2)Σ_k log|k⁴ − x⁴|/sinh²(πk) − S(x)`.
pub fn re_psi_complex_ramanujan(x: f64, params: &EvalParams) -> Result<SeriesValue> {
    check_x(x)?;
    params.validate()?;
    if let Some(m) = guard_center(x, params.guard_delta) {
        return Err(Error::GuardBand {
            x,
            m,
            delta: params.guard_delta,
        });
    }
    let x2 = x * x;
    let lead = PI / 3.0 * x.ln() + 0.25 / (PI * x2);
    let t = x - x.round();
    let log_term = 0.5 * PI * (2.0 * (PI * t).sin().abs()).ln() * csch2(PI * x);
    let plus = k_series(
        params,
        |k| {
            let kf = k as f64;
            2.0 * kf * bose(2.0 * PI * kf) / (kf * kf + x2)
        },
        |first| 2.0 * lambert_tail(first, PI, 1) / ((first * first) as f64 + x2),
    );
    let e = log_csch2_sum(x, params, None);
    let s = double_series_s(x, params)?;
    let value = lead + log_term + plus.value - 0.5 * PI * e.value - s.value;
    Ok(SeriesValue {
        value,
        error_estimate: plus.error()
            + 0.5 * PI * e.error()
            + s.error_estimate
            + ROUNDING * (lead.abs() + log_term.abs() + plus.value + e.value.abs() + value.abs()),
        k_used: plus.used.max(e.used).max(s.k_used),
        n_used: s.n_used,
    })
}

/// γ at any `x > 0` outside the guard bands:
/// `γ = Σ_k x²/(k(k² + x²)) − Re ψ(1+ix)` with Re ψ(1+ix) from
/// [`re_psi_complex_ramanujan`].
pub fn gamma_any_x(x: f64, params: &EvalParams) -> Result<EulerGamma> {
    let q = re_psi_complex_ramanujan(x, params)?;
    let (h, h_err) = inner_harmonic_sum(x)?;
    let value = h - q.value;
    check_consistent(EulerGamma {
        value,
        source: GammaSource::AnyX,
        intermediate: q.value,
        error_estimate: q.error_estimate + h_err + ROUNDING * (h + value.abs()),
        k_used: q.k_used,
        n_used: q.n_used,
    })
}
