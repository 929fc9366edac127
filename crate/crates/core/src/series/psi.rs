//! ψ(x+1), ψ′(x+1) and the identities derived from the same terms.
//!
//! Near a positive integer m the terms `πcot(πx)/(e^{2πx} − 1)` and
//! `πlog|2sin πx|/(2sinh²πx)` blow up; each is paired with the m-th term
//! of the matching k-series and the pair is evaluated in a cancellation
//! free form.

use std::f64::consts::PI;

use super::double::double_series_s;
use super::sums::{csch2_series, k_series, KSum};
use super::zeta::even_zeta_table;
use super::{bose, check_x, csch2, guard_center, EvalParams, SeriesValue, ROUNDING};
use crate::error::{Error, Result};
use crate::oracles::{inner_harmonic_sum, psi_oracle, OracleConfig};
use crate::planner::{cot_partner_tail, csch2_tail, lambert_tail, log_csch2_tail, min_gaps};

/// `(π/3)log x + 1/(2x) − 1/(4πx²)`.
fn leading(x: f64) -> f64 {
    PI / 3.0 * x.ln() + 0.5 / x - 0.25 / (PI * x * x)
}

/// `Σ_{k≠exclude} 2k/((e^{2πk} − 1)(k² − x²))`.
pub(crate) fn cot_partner(x: f64, params: &EvalParams, exclude: Option<u64>) -> KSum {
    k_series(
        params,
        |k| {
            if Some(k) == exclude {
                return 0.0;
            }
            let kf = k as f64;
            2.0 * kf * bose(2.0 * PI * kf) / ((kf - x) * (kf + x))
        },
        |first| cot_partner_tail(first, x, exclude),
    )
}

/// `Σ_{k≠exclude} log|k⁴ − x⁴|/sinh²(πk)`.
pub(crate) fn log_csch2_sum(x: f64, params: &EvalParams, exclude: Option<u64>) -> KSum {
    k_series(
        params,
        |k| {
            if Some(k) == exclude {
                return 0.0;
            }
            let kf = k as f64;
            let log = (kf - x).abs().ln() + (kf + x).ln() + (kf * kf + x * x).ln();
            log * csch2(PI * kf)
        },
        |first| log_csch2_tail(first, x, exclude),
    )
}

/// `log(sin πt/(πt)) = −Σ_i ζ(2i)t^{2i}/i` for `|t| < 1/4`.
fn log_sinc(t: f64) -> f64 {
    let t2 = t * t;
    let mut p = t2;
    let mut acc = 0.0;
    for (i, z) in even_zeta_table().iter().enumerate().skip(1) {
        let term = z * p / i as f64;
        acc -= term;
        if term < 1e-20 * acc.abs() {
            break;
        }
        p *= t2;
    }
    acc
}

/// Highest power kept in the expansions around an integer.
const PAIR_ORDER: usize = 60;

/// Taylor coefficients at `m` of `1/(e^{2πy} − 1) = Σ_k e^{−2πky}`.
fn bose_coefficients(m: u64) -> Vec<f64> {
    let mf = m as f64;
    let k_max = (60.0 / (2.0 * PI * (mf - 0.25))).ceil() as u64 + 1;
    let mut g = vec![0.0; PAIR_ORDER + 2];
    for k in 1..=k_max {
        let a = 2.0 * PI * k as f64;
        let mut c = (-a * mf).exp();
        for (j, gj) in g.iter_mut().enumerate() {
            *gj += c;
            c *= -a / (j + 1) as f64;
        }
    }
    g
}

/// `πcot(πx)/(e^{2πx} − 1) + 2m/((e^{2πm} − 1)(m² − x²))` at `x = m + t`.
///
/// With `C(t) = πt·cot(πt) = 1 − 2Σ ζ(2i)t^{2i}`, `G(t) = 1/(e^{2π(m+t)} − 1)`
/// and `R(t) = 1/(1 + t/(2m))` the pair is `(C·G − G(0)·R)/t`, whose
/// numerator vanishes at `t = 0`.
fn cot_pair(m: u64, t: f64) -> (f64, f64) {
    let g = bose_coefficients(m);
    let zetas = even_zeta_table();
    let n_max = PAIR_ORDER + 1;
    let mut c = vec![0.0; n_max + 1];
    c[0] = 1.0;
    for i in 1..zetas.len() {
        if 2 * i <= n_max {
            c[2 * i] = -2.0 * zetas[i];
        }
    }
    let r = -1.0 / (2.0 * m as f64);
    let mut value = 0.0;
    let mut abs_sum = 0.0;
    let mut last = 0.0;
    let mut t_pow = 1.0;
    let mut r_pow = r;
    for n in 1..=n_max {
        let conv: f64 = (0..=n).map(|a| c[a] * g[n - a]).sum();
        let coeff = conv - g[0] * r_pow;
        let term = coeff * t_pow;
        value += term;
        abs_sum += term.abs();
        last = term.abs();
        t_pow *= t;
        r_pow *= r;
    }
    (value, 2.0 * last + ROUNDING * abs_sum)
}

/// `πlog|2sin πx|/(2sinh²πx) − (π/2)log|m⁴ − x⁴|/sinh²(πm)` at `x = m + t`,
/// regrouped so the two `log|t|` singularities cancel exactly.
fn log_pair(m: u64, t: f64) -> (f64, f64) {
    let mf = m as f64;
    let x = mf + t;
    let s_x = csch2(PI * x);
    let s_m = csch2(PI * mf);
    let singular = if t == 0.0 {
        0.0
    } else {
        t.abs().ln() * (s_x - s_m)
    };
    let regular = ((2.0 * PI).ln() + log_sinc(t)) * s_x;
    let partner = ((2.0 * mf + t).ln() + (mf * mf + x * x).ln()) * s_m;
    let value = 0.5 * PI * (singular + regular - partner);
    let err = ROUNDING * 0.5 * PI * (singular.abs() + regular.abs() + partner.abs());
    (value, err)
}

/// The two singular terms at `x`, paired with the k = m terms when `x` is
/// in the guard band of `m`.
fn singular_terms(x: f64, center: Option<u64>) -> (f64, f64) {
    match center {
        Some(m) => {
            let t = x - m as f64;
            let (p1, e1) = cot_pair(m, t);
            let (p2, e2) = log_pair(m, t);
            (p1 + p2, e1 + e2)
        }
        None => {
            let t = x - x.round();
            let (s, c) = (PI * t).sin_cos();
            let cot = PI * c / s * bose(2.0 * PI * x);
            let log = 0.5 * PI * (2.0 * s.abs()).ln() * csch2(PI * x);
            (cot + log, ROUNDING * (cot.abs() + log.abs()))
        }
    }
}

/// The right-hand side of the ψ formula evaluated at `x` itself, which
/// gives ψ(x+1).
pub fn psi_rhs(x: f64, params: &EvalParams) -> Result<SeriesValue> {
    check_x(x)?;
    params.validate()?;
    let center = guard_center(x, params.guard_delta);
    let a = leading(x);
    let (pairs, pair_err) = singular_terms(x, center);
    let d = cot_partner(x, params, center);
    let e = log_csch2_sum(x, params, center);
    let s = double_series_s(x, params)?;
    let value = a + pairs + d.value - 0.5 * PI * e.value - s.value;
    let error = pair_err
        + d.error()
        + 0.5 * PI * e.error()
        + s.error_estimate
        + ROUNDING * (a.abs() + pairs.abs() + d.value.abs() + e.value.abs() + value.abs());
    Ok(SeriesValue {
        value,
        error_estimate: error,
        k_used: d.used.max(e.used).max(s.k_used),
        n_used: s.n_used,
    })
}

/// ψ(x+1). For `x < 1` the formula is applied at `x + 1` and
/// `ψ(x+1) = ψ(x+2) − 1/(x+1)` is used, which halves the number of outer
/// terms the double series needs near zero.
pub fn psi_ramanujan(x: f64, params: &EvalParams) -> Result<SeriesValue> {
    check_x(x)?;
    if x >= 1.0 {
        return psi_rhs(x, params);
    }
    let y = x + 1.0;
    let r = psi_rhs(y, params)?;
    let value = r.value - 1.0 / y;
    Ok(SeriesValue {
        value,
        error_estimate: r.error_estimate + ROUNDING * (r.value.abs() + 1.0 / y),
        ..r
    })
}

fn reject_guard(x: f64, params: &EvalParams) -> Result<()> {
    match guard_center(x, params.guard_delta) {
        Some(m) => Err(Error::GuardBand {
            x,
            m,
            delta: params.guard_delta,
        }),
        None => Ok(()),
    }
}

/// ψ′(x+1) from the term-wise derivative of the ψ formula; the
/// logarithmic and double-series contributions cancel identically.
pub fn psi_prime_ramanujan(x: f64, params: &EvalParams) -> Result<SeriesValue> {
    check_x(x)?;
    params.validate()?;
    reject_guard(x, params)?;
    let t = x - x.round();
    let s = (PI * t).sin();
    let x2 = x * x;
    let x3 = x2 * x;
    let head = [
        PI / (3.0 * x),
        -0.5 / x2,
        0.5 / (PI * x3),
        -PI * PI / (s * s) * bose(2.0 * PI * x),
    ];
    let d = k_series(
        params,
        |k| {
            let kf = k as f64;
            let gap = (kf - x) * (kf + x);
            4.0 * kf * x * bose(2.0 * PI * kf) / (gap * gap)
        },
        |first| {
            let (gap2, _) = min_gaps(first, x, None);
            4.0 * x * lambert_tail(first, PI, 1) / (gap2 * gap2)
        },
    );
    let e = k_series(
        params,
        |k| {
            let kf = k as f64;
            let gap = (kf - x) * (kf + x) * (kf * kf + x2);
            2.0 * PI * x3 * csch2(PI * kf) / gap
        },
        |first| {
            let (_, gap4) = min_gaps(first, x, None);
            2.0 * PI * x3 * csch2_tail(first, PI, 0) / gap4
        },
    );
    let value = head.iter().sum::<f64>() + d.value + e.value;
    let abs: f64 = head.iter().map(|h| h.abs()).sum();
    Ok(SeriesValue {
        value,
        error_estimate: d.error() + e.error() + ROUNDING * (abs + value.abs()),
        k_used: d.used.max(e.used),
        n_used: 0,
    })
}

/// `ψ(x+1) + γ` from the partial-fraction form
/// `1/(2x) − 1/(2πx²) + πcot(πx)/(e^{2πx} − 1) + Σ_k x²/(k(k²+x²))
///  + Σ_k 4kx²/((e^{2πk} − 1)(k⁴ − x⁴))`.
pub fn psi_plus_gamma(x: f64, params: &EvalParams) -> Result<SeriesValue> {
    check_x(x)?;
    params.validate()?;
    reject_guard(x, params)?;
    let t = x - x.round();
    let (s, c) = (PI * t).sin_cos();
    let cot = PI * c / s * bose(2.0 * PI * x);
    let head = 0.5 / x - 0.5 / (PI * x * x) + cot;
    let (h, h_err) = inner_harmonic_sum(x)?;
    let x2 = x * x;
    let tail_sum = k_series(
        params,
        |k| {
            let kf = k as f64;
            4.0 * kf * x2 * bose(2.0 * PI * kf) / ((kf - x) * (kf + x) * (kf * kf + x2))
        },
        |first| {
            let (_, gap4) = min_gaps(first, x, None);
            4.0 * x2 * lambert_tail(first, PI, 1) / gap4
        },
    );
    let value = head + h + tail_sum.value;
    Ok(SeriesValue {
        value,
        error_estimate: h_err
            + tail_sum.error()
            + ROUNDING * (head.abs() + cot.abs() + h + value.abs()),
        k_used: tail_sum.used,
        n_used: 0,
    })
}

/// `ψ(x+1) − (π/3)log x + (π/2)Σ_k log|x⁴ − k⁴|/sinh²(πk)` at `x = N + 1/2`,
/// which decays like `1/(2x)`.
pub fn asymptotic_residual(x: f64, params: &EvalParams) -> Result<SeriesValue> {
    check_x(x)?;
    params.validate()?;
    let n = x - 0.5;
    if !(n >= 1.0 && n.fract() == 0.0) {
        return Err(Error::invalid(
            "x",
            format!("must be N + 1/2 for a positive integer N, got {x}"),
        ));
    }
    let cfg = OracleConfig::default();
    let psi = psi_oracle(x, &cfg)?;
    let e = log_csch2_sum(x, params, None);
    let lead = PI / 3.0 * x.ln();
    let value = psi - lead + 0.5 * PI * e.value;
    Ok(SeriesValue {
        value,
        error_estimate: cfg.target_tolerance
            + 0.5 * PI * e.error()
            + ROUNDING * (psi.abs() + lead + e.value.abs()),
        k_used: e.used,
        n_used: 0,
    })
}

/// `1 − π/3 + 2π·Σ 1/sinh²(πk)`, which vanishes.
pub fn log_coefficient_residual(params: &EvalParams) -> Result<SeriesValue> {
    params.validate()?;
    let cs = csch2_series(0, PI, params);
    let value = 1.0 - PI / 3.0 + 2.0 * PI * cs.value;
    Ok(SeriesValue {
        value,
        error_estimate: 2.0 * PI * cs.error() + ROUNDING * 2.0,
        k_used: cs.used,
        n_used: 0,
    })
}

/// Largest disagreement between the limit of the cot pair at `x → m` and
/// its two closed forms, `1/(2m(e^{2πm} − 1)) − π/(2sinh²πm)` and
/// `1/(2m(e^{2πm} − 1)) − 2πe^{2πm}/(e^{2πm} − 1)²`, scaled by the size of
/// the terms.
pub fn limit_form_gap(m: u64) -> Result<f64> {
    if !(1..=100).contains(&m) {
        return Err(Error::invalid("m", format!("must lie in 1..=100, got {m}")));
    }
    let mf = m as f64;
    let e = (2.0 * PI * mf).exp();
    let first = 1.0 / (2.0 * mf * (e - 1.0));
    let form_a = first - 0.5 * PI / (PI * mf).sinh().powi(2);
    let form_b = first - 2.0 * PI * e / ((e - 1.0) * (e - 1.0));
    let (limit, _) = cot_pair(m, 0.0);
    let scale = first.abs().max(form_a.abs());
    Ok((form_a - limit).abs().max((form_b - limit).abs()) / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::oracle_euler_gamma;
    use crate::planner::plan;

    // mpmath, 30 digits
    const REFERENCE: [(f64, f64); 8] = [
        (0.25, -0.22745353337626541),
        (0.5, 0.036489973978576521),
        (1.5, 0.70315664064524319),
        (2.75, 1.1825373886117962),
        (10.3, 2.3799028250798993),
        (2.0, 0.92278433509846714),
        (3.0, 1.2561176684318005),
        (0.05, -0.49784499129987037),
    ];

    #[test]
    fn matches_reference_values() {
        for (x, want) in REFERENCE {
            let p = plan(1e-14, x).unwrap();
            let v = psi_ramanujan(x, &p).unwrap();
            assert!((v.value - want).abs() < 2e-14, "x = {x}: {}", v.value - want);
            assert!((v.value - want).abs() <= v.error_estimate + 1e-15, "x = {x}");
            assert!(v.k_used <= 10, "x = {x}: k_used {}", v.k_used);
        }
    }

    #[test]
    fn one_minus_gamma_at_one() {
        let p = plan(1e-14, 1.0).unwrap();
        let v = psi_ramanujan(1.0, &p).unwrap();
        assert!((v.value - (1.0 - oracle_euler_gamma())).abs() < 5e-15);
    }

    #[test]
    fn rhs_without_shift_agrees() {
        let p = plan(1e-14, 0.5).unwrap();
        let direct = psi_rhs(0.5, &p).unwrap();
        assert!((direct.value - 0.036489973978576521).abs() < 1e-13);
    }

    #[test]
    fn pairs_continuous_through_band() {
        for m in 1..=3u64 {
            for &t in &[1e-3, -1e-3, 5e-4, 0.02] {
                let x = m as f64 + t;
                let (paired, _) = singular_terms(x, Some(m));
                let (raw, _) = singular_terms(x, None);
                let mf = m as f64;
                let d_m = 2.0 * mf * bose(2.0 * PI * mf) / ((mf - x) * (mf + x));
                let e_m = (mf.powi(4) - x.powi(4)).abs().ln() * csch2(PI * mf);
                let unpaired = raw + d_m - 0.5 * PI * e_m;
                let tol = 1e-14 / t.abs();
                assert!((paired - unpaired).abs() < tol, "m = {m}, t = {t}");
            }
        }
    }

    #[test]
    fn closed_limit_forms_agree() {
        for m in 1..=5 {
            assert!(limit_form_gap(m).unwrap() < 1e-13, "m = {m}");
        }
    }

    #[test]
    fn derivative_at_half() {
        let p = plan(1e-14, 0.5).unwrap();
        let d = psi_prime_ramanujan(0.5, &p).unwrap();
        assert!((d.value - (PI * PI / 2.0 - 4.0)).abs() < 1e-12);
        let d = psi_prime_ramanujan(0.01, &p).unwrap();
        // ψ′(1.01)
        assert!((d.value - 1.6212135283132201).abs() < 1e-9, "{}", d.value);
    }

    #[test]
    fn derivative_rejects_band() {
        let p = plan(1e-12, 2.0).unwrap();
        assert!(matches!(
            psi_prime_ramanujan(2.0005, &p),
            Err(Error::GuardBand { m: 2, .. })
        ));
    }

    #[test]
    fn psi_plus_gamma_series() {
        let p = plan(1e-14, 1.7).unwrap();
        let v = psi_plus_gamma(1.7, &p).unwrap();
        let psi = psi_oracle(1.7, &OracleConfig::default()).unwrap();
        assert!((v.value - psi - oracle_euler_gamma()).abs() < 1e-13);
    }

    #[test]
    fn asymptotic_checks() {
        let p = plan(1e-14, 1.0).unwrap();
        let r = asymptotic_residual(10.5, &p).unwrap();
        assert!((10.5 * r.value - 0.5).abs() < 0.05, "{}", r.value);
        assert!(asymptotic_residual(10.25, &p).is_err());
        assert!(asymptotic_residual(0.5, &p).is_err());
        assert!(log_coefficient_residual(&p).unwrap().value.abs() <= 1e-13);
    }

    #[test]
    fn log_sinc_series() {
        for &t in &[1e-3, 0.1, 0.24] {
            let direct = ((PI * t).sin() / (PI * t)).ln();
            assert!((log_sinc(t) - direct).abs() < 1e-15, "t = {t}");
        }
    }
}
