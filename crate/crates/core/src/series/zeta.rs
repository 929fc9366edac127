//! ζ at odd and even integers from Bernoulli numbers and Lambert sums.
//!
//! For a positive integer N,
//!
//! ```text
//! 2N·ζ(2N+1) + 4N·Σ k^{−2N−1}/(e^{2πk} − 1) + (1 + (−1)^N)π·Σ k^{−2N}/sinh²(πk)
//!     = (2π)^{2N+1} Σ_{j=0}^{N+1} (−1)^{j+1}(2j − 1)·(B_{2j}/(2j)!)·(B_{2N+2−2j}/(2N+2−2j)!)
//! ```
//!
//! and with `αβ = π²` the same relation holds with the sums taken at rates
//! α and β.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_traits::Zero;

use super::sums::{csch2_series, lambert_series, lambert_sum};
use super::{EvalParams, ModularPair, SeriesValue, ROUNDING};
use crate::bernoulli::{rational_to_f64, shared_table, BernoulliTable, BigRational};
use crate::error::{Error, Result};
use crate::oracles::lambert_integral_oracle;

/// `Σ_{j=0}^{N+1} (−1)^{j+1}(2j − 1)·(B_{2j}/(2j)!)·(B_{2N+2−2j}/(2N+2−2j)!)`,
/// exactly. Equals `7/720` for N = 1 and `1/6` for N = 0.
pub fn odd_zeta_bernoulli_sum(n: u64, table: &BernoulliTable) -> Result<BigRational> {
    let n = n as usize;
    table.require(2 * n + 2)?;
    let mut acc = BigRational::zero();
    for j in 0..=n + 1 {
        let term = table.over_factorial(2 * j)? * table.over_factorial(2 * n + 2 - 2 * j)?;
        let weight = BigRational::from_integer((2 * j as i64 - 1).into());
        if j % 2 == 0 {
            acc -= term * weight;
        } else {
            acc += term * weight;
        }
    }
    Ok(acc)
}

/// `ζ(2N) = (−1)^{N+1}·2^{2N−1}·π^{2N}·B_{2N}/(2N)!`; gives `−1/2` at N = 0.
pub fn zeta_even(n: u64, table: &BernoulliTable) -> Result<f64> {
    let n = n as usize;
    table.require(2 * n)?;
    let mut r = table.over_factorial(2 * n)?;
    if n % 2 == 0 {
        r = -r;
    }
    let two_pow = if n == 0 {
        BigRational::new(1.into(), 2.into())
    } else {
        BigRational::from_integer(num_bigint::BigInt::from(1) << (2 * n - 1))
    };
    Ok(rational_to_f64(&(r * two_pow)) * PI.powi(2 * n as i32))
}

/// `ζ(2i)` for `i = 0..=32` from the shared Bernoulli table.
pub(crate) fn even_zeta_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let t = shared_table();
        (0..=(t.max_index() / 2) as u64)
            .map(|i| zeta_even(i, t).expect("index within shared table"))
            .collect()
    })
}

fn check_order(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid(
            "N",
            "must be at least 1; the N = 0 case is the limit identity",
        ));
    }
    Ok(())
}

/// ζ(2N+1) for N ≥ 1.
pub fn zeta_odd(n: u64, table: &BernoulliTable, params: &EvalParams) -> Result<SeriesValue> {
    check_order(n)?;
    params.validate()?;
    let j_sum = rational_to_f64(&odd_zeta_bernoulli_sum(n, table)?);
    let nf = n as f64;
    let p = 2 * n as i32;
    let main = (2.0 * PI).powi(p + 1) * j_sum;
    let lam = lambert_series(-(p + 1), PI, params);
    let mut value = main - 4.0 * nf * lam.value;
    let mut error = 4.0 * nf * lam.error() + ROUNDING * (main.abs() + 4.0 * nf * lam.value);
    let mut k_used = lam.used;
    if n % 2 == 0 {
        let cs = csch2_series(-p, PI, params);
        value -= 2.0 * PI * cs.value;
        error += 2.0 * PI * cs.error();
        k_used = k_used.max(cs.used);
    }
    Ok(SeriesValue {
        value: value / (2.0 * nf),
        error_estimate: error / (2.0 * nf),
        k_used,
        n_used: 0,
    })
}

/// ζ(2N+1) from the α/β form. The k cap of `params` is scaled by
/// `π/min(α, β)` so the slower of the two series gets as many e-folds as
/// the π series would.
pub fn zeta_odd_general(
    n: u64,
    pair: &ModularPair,
    table: &BernoulliTable,
    params: &EvalParams,
) -> Result<SeriesValue> {
    check_order(n)?;
    params.validate()?;
    let nu = n as usize;
    table.require(2 * nu + 2)?;
    let (alpha, beta) = (pair.alpha(), pair.beta());
    let scaled = EvalParams {
        k_terms: ((params.k_terms as f64) * PI / alpha.min(beta)).ceil() as u64,
        ..*params
    };
    let p = 2 * n as i32;

    // 2^{2N+1} Σ_j (−1)^{j+1}(2j−1) α^{N+1−j} β^j (B_{2j}/(2j)!)(B_{2N+2−2j}/(2N+2−2j)!)
    let mut rhs = 0.0;
    let mut rhs_abs = 0.0;
    for j in 0..=nu + 1 {
        let c = table.over_factorial(2 * j)? * table.over_factorial(2 * nu + 2 - 2 * j)?;
        let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
        let t = sign
            * (2.0 * j as f64 - 1.0)
            * rational_to_f64(&c)
            * alpha.powi((nu + 1 - j) as i32)
            * beta.powi(j as i32);
        rhs += t;
        rhs_abs += t.abs();
    }
    let two_pow = 2f64.powi(p + 1);
    rhs *= two_pow;
    rhs_abs *= two_pow;

    let ca = csch2_series(-p, alpha, &scaled);
    let cb = csch2_series(-p, beta, &scaled);
    let lam = lambert_series(-(p + 1), alpha, &scaled);
    let wa = alpha.powi(1 - n as i32);
    let wb = (-beta).powi(1 - n as i32);
    let numer = rhs - wa * ca.value + wb * cb.value;
    let scale = alpha.powi(n as i32) / (2.0 * n as f64);
    let value = numer * scale - 2.0 * lam.value;
    let error = scale
        * (wa * ca.error() + wb.abs() * cb.error() + ROUNDING * (rhs_abs + wa * ca.value + wb.abs() * cb.value))
        + 2.0 * lam.error()
        + ROUNDING * value.abs();
    Ok(SeriesValue {
        value,
        error_estimate: error,
        k_used: ca.used.max(cb.used).max(lam.used),
        n_used: 0,
    })
}

/// `1 + 2π·Σ 1/sinh²(πk) − 2π·(1/6)`: the N = 0 instance of the odd-zeta
/// relation, with `2Nζ(2N+1)` read as its limit 1.
pub fn zeta_odd_limit_residual(table: &BernoulliTable, params: &EvalParams) -> Result<SeriesValue> {
    params.validate()?;
    let j_sum = rational_to_f64(&odd_zeta_bernoulli_sum(0, table)?);
    let cs = csch2_series(0, PI, params);
    let value = 1.0 + 2.0 * PI * cs.value - 2.0 * PI * j_sum;
    Ok(SeriesValue {
        value,
        error_estimate: 2.0 * PI * cs.error() + ROUNDING * 2.0,
        k_used: cs.used,
        n_used: 0,
    })
}

/// Outcome of checking `Σ k^{2m−1}/(e^{2πk} − 1) = B_{2m}/(4m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambertIdentity {
    /// Truncated sum minus `B_{2m}/(4m)`.
    pub residual: f64,
    pub error_estimate: f64,
    pub target: f64,
    /// `∫_0^∞ t^{2m−1}/(e^{2πt} − 1) dt` by quadrature.
    pub quadrature: f64,
}

/// Checks the Lambert-sum identity for odd `m > 1` against both the exact
/// Bernoulli value and a quadrature of the matching integral.
pub fn lambert_identity_residual(
    m: u64,
    table: &BernoulliTable,
    params: &EvalParams,
) -> Result<LambertIdentity> {
    if m <= 1 || m % 2 == 0 {
        return Err(Error::invalid("m", format!("must be odd and greater than 1, got {m}")));
    }
    params.validate()?;
    let mu = m as usize;
    table.require(2 * mu)?;
    let target = rational_to_f64(
        &(table.get(2 * mu)? / BigRational::from_integer((4 * m as i64).into())),
    );
    let sum = lambert_sum(2 * m as i32 - 1, params);
    let residual = sum.value - target;
    let error_estimate = sum.error_estimate + ROUNDING * target.abs();
    if residual.abs() > error_estimate {
        return Err(Error::Inconsistent {
            check: "lambert sum against Bernoulli value",
            residual,
            allowed: error_estimate,
        });
    }
    let quadrature = lambert_integral_oracle(2 * m as u32 - 1, 20_000)?;
    if (quadrature - target).abs() > 1e-10 {
        return Err(Error::Inconsistent {
            check: "lambert integral against Bernoulli value",
            residual: quadrature - target,
            allowed: 1e-10,
        });
    }
    Ok(LambertIdentity {
        residual,
        error_estimate,
        target,
        quadrature,
    })
}
