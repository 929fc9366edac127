//! Rapidly convergent evaluators for ψ(x+1) and its corollaries.
//!
//! The central formula, valid for every `x > 0`, is
//!
//! ```text
//! ψ(x+1) = (π/3)log x + 1/(2x) − 1/(4πx²) + πcot(πx)/(e^{2πx} − 1)
//!        + πlog|2sin πx|/(2sinh²πx) + Σ_k 2k/((e^{2πk} − 1)(k² − x²))
//!        − (π/2)Σ_k log|k⁴ − x⁴|/sinh²(πk) − S(x)
//! ```
//!
//! with the double series
//! `S(x) = 2π Σ_k e^{−2πkx}(k²Σ_n sin(2πnx)/(k²+n²) − k³Σ_n cos(2πnx)/(n(k²+n²)))`.
//! All k-series converge like `e^{−2πk}`.

mod double;
mod gamma;
mod psi;
mod sums;
mod zeta;

pub use double::double_series_s;
pub use gamma::{gamma_any_x, gamma_at_integer, re_psi_complex_ramanujan};
pub use psi::{
    asymptotic_residual, psi_plus_gamma, limit_form_gap, log_coefficient_residual, psi_prime_ramanujan,
    psi_ramanujan, psi_rhs,
};
pub use sums::{csch2_sum, lambert_sum};
pub use zeta::{
    lambert_identity_residual, odd_zeta_bernoulli_sum, zeta_even, zeta_odd, zeta_odd_general,
    zeta_odd_limit_residual, LambertIdentity,
};

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::MIN_TOLERANCE;

/// Default half-width of the band around positive integers in which the
/// singular term pairs are replaced by their regularized forms.
pub const DEFAULT_GUARD_DELTA: f64 = 1e-3;

/// How the k-indexed series are truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// Stop as soon as the tail bound drops below `tol/10`, at most
    /// `k_terms` terms.
    Envelope,
    /// Always sum exactly `k_terms` terms.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalParams {
    pub tol: f64,
    /// Cap on the outer index k.
    pub k_terms: u64,
    /// Number of inner terms summed explicitly before the
    /// summation-by-parts correction.
    pub n_terms: u64,
    pub guard_delta: f64,
    pub truncation: Truncation,
}

impl EvalParams {
    pub fn new(tol: f64, k_terms: u64, n_terms: u64, guard_delta: f64) -> Result<Self> {
        let p = EvalParams {
            tol,
            k_terms,
            n_terms,
            guard_delta,
            truncation: Truncation::Envelope,
        };
        p.validate()?;
        Ok(p)
    }

    /// Same parameters, summing exactly `k_terms` outer terms.
    pub fn exact(mut self) -> Self {
        self.truncation = Truncation::Exact;
        self
    }

    pub fn with_k_terms(mut self, k_terms: u64) -> Result<Self> {
        self.k_terms = k_terms;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol >= MIN_TOLERANCE) || !self.tol.is_finite() {
            return Err(Error::UnattainableTolerance {
                requested: self.tol,
                reason: format!("double precision mode stops at {MIN_TOLERANCE:e}"),
            });
        }
        if self.k_terms == 0 {
            return Err(Error::invalid("k_terms", "must be at least 1"));
        }
        if self.n_terms == 0 {
            return Err(Error::invalid("n_terms", "must be at least 1"));
        }
        if !(self.guard_delta > 0.0 && self.guard_delta < 0.25) {
            return Err(Error::invalid(
                "guard_delta",
                format!("must lie in (0, 1/4), got {}", self.guard_delta),
            ));
        }
        Ok(())
    }
}

impl Default for EvalParams {
    fn default() -> Self {
        EvalParams {
            tol: 1e-13,
            k_terms: 40,
            n_terms: 1 << 14,
            guard_delta: DEFAULT_GUARD_DELTA,
            truncation: Truncation::Envelope,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Upper bound on `|value − exact|`: truncation bounds plus a rounding
    /// allowance.
    pub error_estimate: f64,
    pub k_used: u64,
    pub n_used: u64,
}

/// Positive reals with `αβ = π²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularPair {
    alpha: f64,
    beta: f64,
}

impl ModularPair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::invalid(
                "pair",
                format!("alpha and beta must be positive, got ({alpha}, {beta})"),
            ));
        }
        let pi2 = PI * PI;
        if (alpha * beta - pi2).abs() > 1e-14 * pi2 {
            return Err(Error::invalid(
                "pair",
                format!("alpha·beta = {} is not π²", alpha * beta),
            ));
        }
        Ok(ModularPair { alpha, beta })
    }

    /// `(α, π²/α)`.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::invalid("alpha", format!("must be positive, got {alpha}")));
        }
        ModularPair::new(alpha, PI * PI / alpha)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaSource {
    /// Limit of the ψ formula at a positive integer m.
    IntegerLimit,
    /// Rearranged ψ formula valid at any x away from the integers.
    AnyX,
}

impl GammaSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            GammaSource::IntegerLimit => "integer_limit",
            GammaSource::AnyX => "any_x",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerGamma {
    pub value: f64,
    pub source: GammaSource,
    /// The ψ-side quantity γ was extracted from: ψ(m+1) for
    /// [`GammaSource::IntegerLimit`], Re ψ(1+ix) for [`GammaSource::AnyX`].
    pub intermediate: f64,
    pub error_estimate: f64,
    pub k_used: u64,
    pub n_used: u64,
}

/// Allowed distance between an accepted γ and the reference value.
pub const GAMMA_CONSISTENCY: f64 = 1e-10;

/// `q/(1 − q)` with `q = e^{−2ρk}`, i.e. `1/(e^{2ρk} − 1)`.
pub(crate) fn bose(arg: f64) -> f64 {
    1.0 / arg.exp_m1()
}

/// `1/sinh²(y)` without overflow for large `y`.
pub(crate) fn csch2(y: f64) -> f64 {
    let q = (-2.0 * y).exp();
    4.0 * q / ((-2.0 * y).exp_m1()).powi(2)
}

/// Relative rounding allowance applied to sums of absolute terms.
pub(crate) const ROUNDING: f64 = 8.0 * f64::EPSILON;

pub(crate) fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("x", format!("needs x > 0, got {x}")))
    }
}

/// Nearest positive integer `m` with `|x − m| < delta`, if any.
pub(crate) fn guard_center(x: f64, delta: f64) -> Option<u64> {
    let m = x.round();
    (m >= 1.0 && (x - m).abs() < delta).then_some(m as u64)
}
