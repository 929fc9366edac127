//! Rapidly convergent series for ψ(x+1) and its corollaries.
//!
//! The crate evaluates a hyperbolic/trigonometric series representation of
//! the digamma function together with the identities that fall out of it:
//! closed formulas for Euler's constant, ζ at odd integers, hyperbolic
//! `csch²` sums and Lambert-type sums. Every evaluator reports an
//! a posteriori error bound and is cross-checked against an independent
//! classical oracle.
//!
//! Module map:
//!
//! * [`bernoulli`]: exact rational Bernoulli numbers.
//! * [`oracles`]: slow but trustworthy classical evaluators (recurrence plus
//!   asymptotic ψ, direct ζ sums, quadrature of the integral form of the
//!   double series).
//! * [`series`]: the rapidly convergent evaluators themselves.
//! * [`planner`]: tolerance-to-term-count planning and rigorous tail bounds.

pub mod bernoulli;
pub mod error;
pub mod oracles;
pub mod planner;
pub mod series;

pub use bernoulli::{BernoulliTable, BigRational};
pub use error::{Error, Result};
pub use oracles::OracleConfig;
pub use planner::{fixed_terms, plan, plan_with_guard, tail_bound, TailBound, TailFamily};
pub use series::{
    EulerGamma, EvalParams, GammaSource, ModularPair, SeriesValue, Truncation, DEFAULT_GUARD_DELTA,
};

/// Euler–Mascheroni constant γ, correctly rounded to double precision.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Smallest absolute tolerance accepted in double precision mode.
pub const MIN_TOLERANCE: f64 = 1e-15;
