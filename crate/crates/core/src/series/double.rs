//! The double series S(x).
//!
//! Three evaluation paths:
//!
//! * integer `x = m`: the sine sums vanish and the cosine sums have the
//!   closed form `Σ_n k²/(n(k²+n²)) = γ + Re ψ(1+ik)`;
//! * `0 < |x − m| < guard_delta`: a local expansion of the integral form
//!   `S(x) = ∫_x^∞ log|2sin πv|·K(v) dv` around `m`;
//! * otherwise: explicit inner sums up to `n_terms`, finished by repeated
//!   summation by parts. Each step multiplies the remainder by
//!   `w = z/(1 − z)`, `z = e^{2πix}`, and takes a forward difference of
//!   `1/(n − ik)`, which is available in closed form.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::{check_x, EvalParams, SeriesValue, Truncation, ROUNDING};
use crate::error::Result;
use crate::oracles::inner_harmonic_sum;
use crate::planner::{abel_remainder, exp_envelope_tail};
use crate::series::zeta::even_zeta_table;

/// `S(x)`; see the module docs for how the inner sums are handled.
pub fn double_series_s(x: f64, params: &EvalParams) -> Result<SeriesValue> {
    check_x(x)?;
    params.validate()?;
    let m = x.round();
    let t = x - m;
    if m >= 1.0 && t == 0.0 {
        return at_integer(m as u64, params);
    }
    if m >= 1.0 && t.abs() < params.guard_delta {
        return near_integer(m as u64, t, params);
    }
    fourier(x, params)
}

/// Number of outer terms: the first k whose envelope tail is below
/// `tol/10`, capped at `k_terms`.
fn outer_count(x: f64, params: &EvalParams) -> u64 {
    if params.truncation == Truncation::Exact {
        return params.k_terms;
    }
    let budget = 0.1 * params.tol;
    (1..=params.k_terms)
        .find(|&k| exp_envelope_tail(k + 1, x) <= budget)
        .unwrap_or(params.k_terms)
}

/// `frac(n·x)` in `[−1/2, 1/2]`, with the rounding error of the product
/// recovered by a fused multiply-add.
fn frac_mul(n: u64, x: f64) -> f64 {
    let nf = n as f64;
    let p = nf * x;
    let e = nf.mul_add(x, -p);
    let f = (p - p.round()) + e;
    f - f.round()
}

fn fourier(x: f64, params: &EvalParams) -> Result<SeriesValue> {
    let k_count = outer_count(x, params) as usize;
    let m_terms = params.n_terms;
    let t = x - x.round();
    let phi = PI * t;
    // Σ_n cos(2πnx)/n
    let log_term = -(2.0 * phi.sin().abs()).ln();

    let mut sin_acc = vec![0.0; k_count];
    let mut cos_acc = vec![0.0; k_count];
    let mut abs_acc = vec![0.0; k_count];
    for n in 1..m_terms {
        let (s, c) = (2.0 * PI * frac_mul(n, x)).sin_cos();
        let nf = n as f64;
        for (i, ((sa, ca), aa)) in sin_acc
            .iter_mut()
            .zip(cos_acc.iter_mut())
            .zip(abs_acc.iter_mut())
            .enumerate()
        {
            let kf = (i + 1) as f64;
            let den = nf * nf + kf * kf;
            *sa += s / den;
            *ca += c * nf / den;
            *aa += (kf * s.abs() + nf * c.abs()) / den;
        }
    }

    let remainder = abel_remainder(m_terms, t.abs());
    let mut value = 0.0;
    let mut abs_sum = 0.0;
    let mut error = 0.0;
    for i in 0..k_count {
        let kf = (i + 1) as f64;
        let tail = abel_correction(m_terms, x, kf, remainder.order);
        let sin_sum = sin_acc[i] + tail.sin;
        let cos_rest = cos_acc[i] + tail.cos;
        let envelope = 2.0 * PI * (-2.0 * PI * kf * x).exp();
        let term = envelope * (kf * kf * sin_sum - kf * (log_term - cos_rest));
        value += term;
        abs_sum += envelope * kf * kf * (abs_acc[i] + tail.magnitude + log_term.abs());
        error += envelope * 2.0 * kf * remainder.bound;
    }
    error += exp_envelope_tail(k_count as u64 + 1, x) + ROUNDING * abs_sum;
    Ok(SeriesValue {
        value,
        error_estimate: error,
        k_used: k_count as u64,
        n_used: m_terms,
    })
}

/// Summation-by-parts estimates of `Σ_{n≥m} sin(2πnx)/(k² + n²)` and
/// `Σ_{n≥m} n·cos(2πnx)/(k² + n²)` using `order` difference terms.
#[derive(Debug, Clone, Copy)]
struct AbelTail {
    sin: f64,
    cos: f64,
    /// Sum of the magnitudes of the terms, for the rounding allowance.
    magnitude: f64,
}

fn abel_correction(m: u64, x: f64, k: f64, order: usize) -> AbelTail {
    let phi = PI * (x - x.round());
    let (sin_phi, cos_phi) = phi.sin_cos();
    let z = Complex64::new(cos_phi * cos_phi - sin_phi * sin_phi, 2.0 * sin_phi * cos_phi);
    // 1 − z = −2i·sin φ·e^{iφ}
    let one_minus_z = Complex64::new(2.0 * sin_phi * sin_phi, -2.0 * sin_phi * cos_phi);
    let w = z / one_minus_z;
    let prefactor = Complex64::from_polar(1.0, 2.0 * PI * frac_mul(m, x)) / one_minus_z;
    let mf = m as f64;
    // forward differences of h(n) = 1/(n − ik) at n = m
    let mut diff = Complex64::new(1.0, 0.0) / Complex64::new(mf, -k);
    let mut wj = Complex64::new(1.0, 0.0);
    let mut acc_sin = Complex64::new(0.0, 0.0);
    let mut acc_cos = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for j in 0..order {
        acc_sin += wj * diff.im;
        acc_cos += wj * diff.re;
        magnitude += wj.norm() * diff.norm();
        let next = (j + 1) as f64;
        diff = diff * (-next) / Complex64::new(mf + next, -k);
        wj *= w;
    }
    AbelTail {
        sin: (prefactor * acc_sin).im / k,
        cos: (prefactor * acc_cos).re,
        magnitude: magnitude * prefactor.norm(),
    }
}

/// `S(m) = −2π Σ_k k·e^{−2πkm}·(γ + Re ψ(1+ik))`.
fn at_integer(m: u64, params: &EvalParams) -> Result<SeriesValue> {
    let x = m as f64;
    let k_count = outer_count(x, params);
    let mut value = 0.0;
    let mut abs_sum = 0.0;
    let mut error = 0.0;
    for k in 1..=k_count {
        let kf = k as f64;
        let (h, h_err) = inner_harmonic_sum(kf)?;
        let weight = 2.0 * PI * kf * (-2.0 * PI * kf * x).exp();
        value -= weight * h;
        abs_sum += weight * h;
        error += weight * h_err;
    }
    error += exp_envelope_tail(k_count + 1, x) + ROUNDING * abs_sum;
    Ok(SeriesValue {
        value,
        error_estimate: error,
        k_used: k_count,
        n_used: 0,
    })
}

/// Taylor coefficients of `log(sin πτ/(πτ)) = −Σ_i ζ(2i)τ^{2i}/i`, indexed
/// by the power of τ.
fn log_sinc_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let zetas = even_zeta_table();
        let mut c = vec![0.0; 2 * (zetas.len() - 1) + 1];
        for (i, z) in zetas.iter().enumerate().skip(1) {
            c[2 * i] = -z / i as f64;
        }
        c
    })
}

/// Highest power of `t` kept in the local expansion.
const LOCAL_ORDER: usize = 60;

/// `S(m + t) = S(m) − ∫_0^t log|2sin πτ|·K(m + τ) dτ` with
/// `K(m + τ) = Σ_j κ_j τ^j` and the logarithm split as
/// `log 2π + log|τ| + log(sin πτ/(πτ))`.
fn near_integer(m: u64, t: f64, params: &EvalParams) -> Result<SeriesValue> {
    let base = at_integer(m, params)?;
    let mf = m as f64;
    // Taylor coefficients of K(m + τ); |τ| < 1/4 keeps every k-series
    // dominated by e^{−2πk(m − 1/4)}.
    let k_max = (60.0 / (2.0 * PI * (mf - 0.25))).ceil() as u64 + 1;
    let mut kappa = vec![0.0; LOCAL_ORDER + 1];
    for k in 1..=k_max {
        let a = 2.0 * PI * k as f64;
        let mut c = a * a * (-a * mf).exp();
        for (j, kj) in kappa.iter_mut().enumerate() {
            *kj += c;
            c *= -a / (j + 1) as f64;
        }
    }
    let lambda = log_sinc_coefficients();
    let log_t = t.abs().ln();
    let log_2pi = (2.0 * PI).ln();
    let mut integral = 0.0;
    let mut abs_sum = 0.0;
    let mut last = f64::INFINITY;
    let mut t_pow = t;
    for j in 0..=LOCAL_ORDER {
        let mu: f64 = (1..=j / 2)
            .filter(|i| 2 * i < lambda.len())
            .map(|i| lambda[2 * i] * kappa[j - 2 * i])
            .sum();
        let jp = (j + 1) as f64;
        let term = t_pow / jp * (kappa[j] * (log_2pi + log_t - 1.0 / jp) + mu);
        integral += term;
        abs_sum += term.abs();
        if j >= 4 && term.abs().max(last) < 1e-22 {
            break;
        }
        last = term.abs();
        t_pow *= t;
    }
    Ok(SeriesValue {
        value: base.value - integral,
        // the terms decay at least geometrically with ratio ≤ 1/2 once tiny
        error_estimate: base.error_estimate + 2.0 * last + ROUNDING * abs_sum,
        k_used: base.k_used,
        n_used: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::s_integral_oracle;

    fn params(tol: f64) -> EvalParams {
        EvalParams::new(tol, 40, 1 << 12, 1e-3).unwrap()
    }

    // mpmath, 30 digits, from the integral form
    const S_0_5: f64 = 0.13061896733266376;
    const S_1: f64 = -0.0079401506148147894;
    const S_2: f64 = -1.4721868416289689e-5;
    const S_0_9996: f64 = -0.0081479586378422025;

    #[test]
    fn frac_mul_is_accurate() {
        let x = 0.1;
        let f = frac_mul(1 << 20, x);
        // 2^20·0.1 as a double is 104857.6000000000058...
        assert!((f + 0.4).abs() < 1e-9);
        assert!(frac_mul(3, 0.5).abs() == 0.5);
    }

    #[test]
    fn remainder_bound_holds() {
        use crate::planner::{abel_remainder, tail_bound, TailFamily};
        for &(m, x, k) in &[(50u64, 0.3, 1.0), (200, 0.05, 2.0), (64, 1.47, 3.0), (500, 2.01, 1.0)] {
            let rem = abel_remainder(m, (x - f64::round(x)).abs());
            let far = 10 * m;
            let far_rem = abel_remainder(far, (x - f64::round(x)).abs());
            let near = abel_correction(m, x, k, rem.order);
            let tail = abel_correction(far, x, k, far_rem.order);
            let (mut s, mut c) = (0.0, 0.0);
            for n in m..far {
                let (sn, cn) = (2.0 * PI * frac_mul(n, x)).sin_cos();
                let nf = n as f64;
                s += sn / (nf * nf + k * k);
                c += cn * nf / (nf * nf + k * k);
            }
            let bound = tail_bound(TailFamily::InnerCos, m, x).unwrap().bound;
            assert!((s + tail.sin - near.sin).abs() <= bound / k + 1e-15, "sin at {x}");
            assert!((c + tail.cos - near.cos).abs() <= bound + 1e-15, "cos at {x}");
        }
    }

    /// k-th outer term of S(x) with accurate inner sums.
    fn outer_term(k: u64, x: f64) -> f64 {
        let m = 400;
        let kf = k as f64;
        let (mut s, mut c) = (0.0, 0.0);
        for n in 1..m {
            let (sn, cn) = (2.0 * PI * frac_mul(n, x)).sin_cos();
            let nf = n as f64;
            s += sn / (nf * nf + kf * kf);
            c += cn * nf / (nf * nf + kf * kf);
        }
        let order = abel_remainder(m, (x - x.round()).abs()).order;
        let tail = abel_correction(m, x, kf, order);
        let log_term = -(2.0 * (PI * x).sin().abs()).ln();
        2.0 * PI * (-2.0 * PI * kf * x).exp()
            * (kf * kf * (s + tail.sin) - kf * (log_term - c - tail.cos))
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(20))]

        #[test]
        fn envelope_dominates_outer_terms(first in 1u64..6, x in 0.1f64..3.0) {
            let x = if (x - x.round()).abs() < 0.05 { x + 0.1 } else { x };
            let direct: f64 = (first..10 * first).map(|k| outer_term(k, x).abs()).sum();
            let b = exp_envelope_tail(first, x);
            proptest::prop_assert!(direct <= b, "x = {}: {} > {}", x, direct, b);
        }
    }

    #[test]
    fn agrees_with_quadrature() {
        for &x in &[0.3, 1.2, 0.77, 2.45] {
            let s = double_series_s(x, &params(1e-14)).unwrap();
            let q = s_integral_oracle(x, 200_000).unwrap();
            assert!((s.value - q).abs() <= 1e-9, "x = {x}: {} vs {q}", s.value);
            assert!((s.value - q).abs() <= s.error_estimate + 1e-10, "x = {x}");
        }
    }

    #[test]
    fn reference_values() {
        let cases = [(0.5, S_0_5), (1.0, S_1), (2.0, S_2), (0.9996, S_0_9996)];
        for (x, want) in cases {
            let s = double_series_s(x, &params(1e-15)).unwrap();
            assert!((s.value - want).abs() < 1e-14, "x = {x}: {}", s.value - want);
            assert!((s.value - want).abs() <= s.error_estimate + 1e-15, "x = {x}");
        }
    }

    #[test]
    fn integer_has_no_inner_terms() {
        let s = double_series_s(3.0, &params(1e-13)).unwrap();
        assert_eq!(s.n_used, 0);
        assert!(s.value < 0.0);
    }

    #[test]
    fn continuous_across_guard_edge() {
        let p = params(1e-15);
        for &m in &[1.0, 2.0] {
            let inside = double_series_s(m + 0.999e-3, &p).unwrap().value;
            let outside = double_series_s(m + 1.001e-3, &p).unwrap().value;
            let slope = (outside - inside) / 2e-6;
            assert!(slope.abs() < 1.0, "m = {m}: jump {}", outside - inside);
            let local = double_series_s(m - 0.999e-3, &p).unwrap().value;
            let direct = double_series_s(m - 1.001e-3, &p).unwrap().value;
            assert!((local - direct).abs() < 1e-6);
        }
    }

    #[test]
    fn local_expansion_matches_summed_path() {
        // same point through both paths by widening the guard band
        let x = 1.04;
        let wide = EvalParams::new(1e-15, 40, 1 << 12, 0.1).unwrap();
        let narrow = EvalParams::new(1e-15, 40, 1 << 14, 1e-3).unwrap();
        let a = double_series_s(x, &wide).unwrap();
        let b = double_series_s(x, &narrow).unwrap();
        assert!((a.value - b.value).abs() < 1e-14, "{} vs {}", a.value, b.value);
    }

    #[test]
    fn decays_like_first_exponential() {
        let p = params(1e-15);
        for &x in &[0.3, 1.3, 2.3] {
            let a = double_series_s(x, &p).unwrap().value.abs();
            let b = double_series_s(x + 1.0, &p).unwrap().value.abs();
            assert!(b <= (-2.0 * PI).exp() * a * 1.01, "x = {x}");
        }
    }
}
