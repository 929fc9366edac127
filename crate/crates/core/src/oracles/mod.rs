//! Classical evaluators used as ground truth.
//!
//! Nothing in this module calls into [`crate::series`]; the two sides meet
//! only in tests and in the verification suites.

pub mod quadrature;

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::bernoulli::shared_table;
use crate::error::{Error, Result};
use crate::{EULER_GAMMA, MIN_TOLERANCE};

use quadrature::{tanh_sinh, Node};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Absolute error target.
    pub target_tolerance: f64,
    /// Arguments are lifted by the recurrence until they reach this size
    /// before the asymptotic series is applied.
    pub shift_threshold: f64,
    /// Cap on asymptotic-series terms.
    pub max_terms: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            target_tolerance: MIN_TOLERANCE,
            shift_threshold: 16.0,
            max_terms: 30,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_tolerance >= MIN_TOLERANCE) {
            return Err(Error::UnattainableTolerance {
                requested: self.target_tolerance,
                reason: format!("double precision oracles stop at {MIN_TOLERANCE:e}"),
            });
        }
        if !(self.shift_threshold > 0.0) {
            return Err(Error::invalid("shift_threshold", "must be positive"));
        }
        if self.max_terms == 0 {
            return Err(Error::invalid("max_terms", "must be at least 1"));
        }
        Ok(())
    }
}

/// ψ(y) for `y > 0` by upward recurrence and the Stirling series
/// `ψ(y) ≈ log y − 1/(2y) − Σ B_{2j}/(2j·y^{2j})`, truncated once a term
/// drops below a quarter of the target.
pub fn digamma(y: f64, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::invalid("y", format!("digamma oracle needs y > 0, got {y}")));
    }
    let mut shift = 0.0;
    let mut z = y;
    while z < cfg.shift_threshold {
        shift += 1.0 / z;
        z += 1.0;
    }

    let table = shared_table();
    let max_j = cfg.max_terms.min(table.max_index() / 2);
    let inv2 = 1.0 / (z * z);
    let mut power = inv2;
    let mut series = 0.0;
    let mut previous = f64::INFINITY;
    let mut converged = false;
    for j in 1..=max_j {
        let term = table.to_f64(2 * j)? / (2 * j) as f64 * power;
        if term.abs() > previous {
            break;
        }
        series += term;
        if term.abs() <= 0.25 * cfg.target_tolerance {
            converged = true;
            break;
        }
        previous = term.abs();
        power *= inv2;
    }
    if !converged {
        return Err(Error::UnattainableTolerance {
            requested: cfg.target_tolerance,
            reason: format!(
                "asymptotic series at {z} does not reach the target within {max_j} terms; raise shift_threshold"
            ),
        });
    }
    Ok(z.ln() - 0.5 / z - series - shift)
}

/// ψ(x+1) for `x > 0`.
pub fn psi_oracle(x: f64, cfg: &OracleConfig) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::invalid("x", format!("psi_oracle needs x > 0, got {x}")));
    }
    digamma(x + 1.0, cfg)
}

/// γ recovered from the oracle as `1 − ψ(2)`.
pub fn oracle_euler_gamma() -> f64 {
    static G: OnceLock<f64> = OnceLock::new();
    *G.get_or_init(|| 1.0 - psi_oracle(1.0, &OracleConfig::default()).expect("ψ(2)"))
}

/// ψ(x+1) from its Maclaurin series `−γ + Σ (−1)^{n+1} ζ(n+1) xⁿ`.
pub fn psi_maclaurin_oracle(x: f64, n_terms: usize) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::invalid("x", format!("Maclaurin series needs |x| < 1, got {x}")));
    }
    let cfg = OracleConfig::default();
    let mut sum = -EULER_GAMMA;
    let mut power = 1.0;
    for n in 1..=n_terms {
        power *= x;
        let zeta = zeta_direct_oracle((n + 1) as f64, &cfg)?;
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * zeta * power;
    }
    Ok(sum)
}

/// Bound on the error of [`psi_maclaurin_oracle`] after `n_terms` terms.
pub fn maclaurin_truncation_bound(x: f64, n_terms: usize) -> f64 {
    let zeta2 = PI * PI / 6.0;
    x.abs().powi(n_terms as i32 + 1) / (1.0 - x.abs()) * zeta2
}

/// Partial sum of `n^{−s}` together with its Euler–Maclaurin tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectZeta {
    pub value: f64,
    pub partial_sum: f64,
    pub terms: usize,
    /// `∫_{N+1}^∞ t^{−s} dt`
    pub lower_tail: f64,
    /// `∫_N^∞ t^{−s} dt`
    pub upper_tail: f64,
    pub error_bound: f64,
}

/// ζ(s) for `s > 1` by direct summation plus an Euler–Maclaurin tail.
pub fn zeta_direct_oracle(s: f64, cfg: &OracleConfig) -> Result<f64> {
    zeta_direct_detailed(s, cfg).map(|z| z.value)
}

pub fn zeta_direct_detailed(s: f64, cfg: &OracleConfig) -> Result<DirectZeta> {
    cfg.validate()?;
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::invalid("s", format!("direct zeta needs s > 1, got {s}")));
    }
    // Tail after the B_4 correction is bounded by the B_6 term:
    // |B_6/6!|·s(s+1)(s+2)(s+3)(s+4)·N^{−s−5}.
    let rising5 = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0);
    let remainder = |n: f64| rising5 / 30240.0 * n.powf(-s - 5.0);
    let mut n = 8usize;
    while remainder(n as f64) > 0.25 * cfg.target_tolerance {
        n *= 2;
        if n > 1 << 26 {
            return Err(Error::UnattainableTolerance {
                requested: cfg.target_tolerance,
                reason: format!("direct zeta at s = {s} needs more than 2^26 terms"),
            });
        }
    }
    let partial: f64 = (1..=n).map(|k| (k as f64).powf(-s)).sum();
    let nf = n as f64;
    let integral = nf.powf(1.0 - s) / (s - 1.0);
    let tail = integral - 0.5 * nf.powf(-s) + s / 12.0 * nf.powf(-s - 1.0)
        - s * (s + 1.0) * (s + 2.0) / 720.0 * nf.powf(-s - 3.0);
    Ok(DirectZeta {
        value: partial + tail,
        partial_sum: partial,
        terms: n,
        lower_tail: (nf + 1.0).powf(1.0 - s) / (s - 1.0),
        upper_tail: integral,
        error_bound: remainder(nf) + 4.0 * f64::EPSILON * (partial + tail),
    })
}

/// `Σ_{n≥1} k²/(n(k² + n²))`, which equals `γ + Re ψ(1+ik)`.
///
/// Direct summation to `N ≥ max(64, 8k)` followed by an Euler–Maclaurin
/// tail through the `B_6` term.
pub fn inner_harmonic_sum(k: f64) -> Result<(f64, f64)> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::invalid("k", format!("needs k > 0, got {k}")));
    }
    let k2 = k * k;
    let n = (8.0 * k).ceil().max(64.0) as usize;
    let partial: f64 = (1..=n)
        .map(|j| {
            let t = j as f64;
            k2 / (t * (t * t + k2))
        })
        .sum();
    let nf = n as f64;
    let c = Complex64::new(nf, -k);
    // f^{(r)}(t) = (−1)^r r!·(t^{−r−1} − Re (t − ik)^{−r−1})
    let deriv = |r: i32, fact: f64| -> f64 {
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        sign * fact * (nf.powi(-r - 1) - c.powi(-r - 1).re)
    };
    let f_n = k2 / (nf * (nf * nf + k2));
    let tail = 0.5 * (k2 / (nf * nf)).ln_1p() - 0.5 * f_n - deriv(1, 1.0) / 12.0
        + deriv(3, 6.0) / 720.0
        - deriv(5, 120.0) / 30240.0;
    let bound = 2.0 * (deriv(7, 5040.0) / 1209600.0).abs();
    let value = partial + tail;
    Ok((value, bound + 4.0 * f64::EPSILON * value))
}

/// `Re ψ(1+ik) = Σ_{n≥1} k²/(n(k²+n²)) − γ`.
pub fn re_psi_one_plus_ik(k: f64, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    let (h, _) = inner_harmonic_sum(k)?;
    Ok(h - EULER_GAMMA)
}

/// `Im ψ(1+ix) = (π/2)·coth(πx) − 1/(2x)`.
pub fn im_psi_one_plus_ix(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::invalid("x", format!("needs x > 0, got {x}")));
    }
    let y = PI * x;
    if y < 0.05 {
        // (π/2)(coth y − 1/y) with coth y − 1/y = y/3 − y³/45 + 2y⁵/945 − y⁷/4725 + …
        let y2 = y * y;
        let series = y / 3.0 * (1.0 - y2 / 15.0 * (1.0 - 2.0 * y2 / 21.0 * (1.0 - y2 / 10.0)));
        return Ok(0.5 * PI * series);
    }
    Ok(0.5 * PI / y.tanh() - 0.5 / x)
}

/// `Σ_k (2πk)² e^{−2πkv}` in closed form, `(2π)² q(1+q)/(1−q)³` with
/// `q = e^{−2πv}`.
fn kernel(v: f64) -> f64 {
    let q = (-2.0 * PI * v).exp();
    let one_minus_q = -(-2.0 * PI * v).exp_m1();
    4.0 * PI * PI * q * (1.0 + q) / one_minus_q.powi(3)
}

/// `S(x) = ∫_x^∞ log|2 sin(πv)| Σ_k (2πk)² e^{−2πkv} dv` by quadrature.
///
/// The range is split at every integer so that each panel carries its
/// logarithmic singularities at the endpoints, where tanh-sinh nodes
/// cluster. Panels stop once the exponential envelope is below `1e-18`.
/// `quad_points` caps the evaluations spent on any one panel.
pub fn s_integral_oracle(x: f64, quad_points: usize) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::invalid("x", format!("needs x > 0, got {x}")));
    }
    if (x - x.round()).abs() < 1e-6 {
        return Err(Error::invalid(
            "x",
            format!("{x} is within 1e-6 of an integer; quadrature nodes would hit the singularity"),
        ));
    }
    const TARGET: f64 = 1e-10;
    let panel_tol = 1e-13;

    let integrand = |left_is_integer: bool| {
        move |node: Node| -> f64 {
            // every panel ends on an integer; the start is an integer except
            // for the first panel
            let d = if left_is_integer && node.from_left < node.from_right {
                node.from_left
            } else {
                node.from_right
            };
            (2.0 * (PI * d).sin()).abs().ln() * kernel(node.x)
        }
    };

    let mut total = 0.0;
    let mut error = 0.0;
    let mut a = x;
    let mut b = x.floor() + 1.0;
    let mut left_is_integer = false;
    loop {
        let p = tanh_sinh(integrand(left_is_integer), a, b, panel_tol, quad_points)?;
        total += p.value;
        error += p.error;
        // |log|2 sin|| ≤ log 2 + |log|...||; the envelope bound after b is
        // ∫_b^∞ kernel·(log 2 + 1) dv ≤ kernel(b)/(2π)·(1+q)… folded into a
        // factor 4 below.
        if 4.0 * kernel(b) / (2.0 * PI) < 1e-18 {
            break;
        }
        a = b;
        b += 1.0;
        left_is_integer = true;
    }
    if error > TARGET {
        return Err(Error::QuadratureNotConverged {
            target: TARGET,
            points: quad_points,
            estimate: error,
        });
    }
    Ok(total)
}

/// `∫_0^∞ t^p / (e^{2πt} − 1) dt` for `p ≥ 1`, by unit panels.
pub fn lambert_integral_oracle(power: u32, quad_points: usize) -> Result<f64> {
    if power == 0 {
        return Err(Error::invalid("power", "the integral diverges at 0 for power 0"));
    }
    let p = power as i32;
    let f = move |node: Node| -> f64 {
        let t = node.x;
        if t == 0.0 {
            return 0.0;
        }
        t.powi(p) / (2.0 * PI * t).exp_m1()
    };
    let mut total = 0.0;
    let mut a = 0.0;
    loop {
        let b = a + 1.0;
        let panel = tanh_sinh(f, a, b, 1e-15, quad_points)?;
        total += panel.value;
        // envelope t^p e^{−2πt} beyond b, with slack for the polynomial
        if (p as f64 * b.ln() - 2.0 * PI * b).exp() * (1.0 + b) < 1e-20 {
            break;
        }
        a = b;
    }
    Ok(total)
}
