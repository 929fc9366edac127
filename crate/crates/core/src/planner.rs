//! Tolerance planning and a posteriori tail bounds.
//!
//! Every bound here is a closed-form or explicitly summed majorant of the
//! omitted terms. Bounds are loose by design (usually within a factor of a
//! few) but never below the true tail.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::{EvalParams, Truncation, DEFAULT_GUARD_DELTA};
use crate::MIN_TOLERANCE;

/// Series families with a dedicated tail bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailFamily {
    /// Outer sum of the double series, `~ k·log k·e^{−2πkx}`.
    ExpEnvelope,
    /// `Σ 1/sinh²(πk)`.
    Csch2,
    /// `Σ k^p/(e^{2πk} − 1)`.
    Lambert(i32),
    /// `Σ log|k⁴ − x⁴|/sinh²(πk)`.
    LogCsch2,
    /// Inner sine sum after the summation-by-parts acceleration.
    InnerSin,
    /// Inner cosine remainder after the summation-by-parts acceleration.
    InnerCos,
}

impl fmt::Display for TailFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailFamily::ExpEnvelope => write!(f, "exp_envelope"),
            TailFamily::Csch2 => write!(f, "csch2"),
            TailFamily::Lambert(p) => write!(f, "lambert:{p}"),
            TailFamily::LogCsch2 => write!(f, "log_csch2"),
            TailFamily::InnerSin => write!(f, "inner_sin"),
            TailFamily::InnerCos => write!(f, "inner_cos"),
        }
    }
}

impl FromStr for TailFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let family = match s {
            "exp_envelope" => TailFamily::ExpEnvelope,
            "csch2" => TailFamily::Csch2,
            "lambert" => TailFamily::Lambert(1),
            "log_csch2" => TailFamily::LogCsch2,
            "inner_sin" => TailFamily::InnerSin,
            "inner_cos" => TailFamily::InnerCos,
            other => match other.strip_prefix("lambert:").map(str::parse::<i32>) {
                Some(Ok(p)) => TailFamily::Lambert(p),
                _ => return Err(Error::UnknownFamily(other.to_string())),
            },
        };
        Ok(family)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound {
    pub family: TailFamily,
    pub first_omitted_index: u64,
    pub bound: f64,
}

/// Bound on the tail of `family` starting at `first_omitted`.
///
/// For the inner families the bound covers what is left after the
/// summation-by-parts correction at `first_omitted`, per unit weight; it is
/// zero at integer `x`, where the sine sums vanish and the cosine sums have
/// a closed form.
pub fn tail_bound(family: TailFamily, first_omitted: u64, x: f64) -> Result<TailBound> {
    if first_omitted == 0 {
        return Err(Error::invalid("first_omitted", "must be at least 1"));
    }
    let needs_x = matches!(
        family,
        TailFamily::ExpEnvelope | TailFamily::LogCsch2 | TailFamily::InnerSin | TailFamily::InnerCos
    );
    if needs_x && !(x > 0.0 && x.is_finite()) {
        return Err(Error::invalid("x", format!("needs x > 0, got {x}")));
    }
    let bound = match family {
        TailFamily::ExpEnvelope => exp_envelope_tail(first_omitted, x),
        TailFamily::Csch2 => csch2_tail(first_omitted, PI, 0),
        TailFamily::Lambert(p) => lambert_tail(first_omitted, PI, p),
        TailFamily::LogCsch2 => {
            let exclude = (x.fract() == 0.0).then_some(x as u64);
            log_csch2_tail(first_omitted, x, exclude)
        }
        TailFamily::InnerSin | TailFamily::InnerCos => {
            abel_remainder(first_omitted, distance_to_integer(x)).bound
        }
    };
    Ok(TailBound {
        family,
        first_omitted_index: first_omitted,
        bound,
    })
}

/// Term counts for evaluating the series at `x` to absolute error `tol`,
/// with the default guard band.
pub fn plan(tol: f64, x: f64) -> Result<EvalParams> {
    plan_with_guard(tol, x, DEFAULT_GUARD_DELTA)
}

pub fn plan_with_guard(tol: f64, x: f64, guard_delta: f64) -> Result<EvalParams> {
    if !(tol >= MIN_TOLERANCE) || !tol.is_finite() {
        return Err(Error::UnattainableTolerance {
            requested: tol,
            reason: format!("double precision mode stops at {MIN_TOLERANCE:e}"),
        });
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::invalid("x", format!("needs x > 0, got {x}")));
    }
    let budget = 0.25 * tol;
    let m = x.round();
    let exclude = (m >= 1.0 && (x - m).abs() < guard_delta).then_some(m as u64);

    let floor_k = ((40.0 / tol).ln() / (2.0 * PI)).ceil().max(1.0) as u64;
    let mut k = 1u64;
    loop {
        let next = k + 1;
        let ok = 0.5 * PI * csch2_tail(next, PI, 0) <= budget
            && cot_partner_tail(next, x, exclude) <= budget
            && 0.5 * PI * log_csch2_tail(next, x, exclude) <= budget
            && exp_envelope_tail(next, x) <= budget;
        if ok {
            break;
        }
        k += 1;
        if k > 1_000_000 {
            return Err(Error::UnattainableTolerance {
                requested: tol,
                reason: format!("outer series at x = {x} need more than 10^6 terms"),
            });
        }
    }
    let k_terms = k.max(floor_k);

    // The inner sums are only summed where x is at least the guard width
    // from a positive integer; inside the band a local expansion is used.
    let d = distance_to_integer(x);
    let d_eff = if m >= 1.0 { d.max(guard_delta) } else { d };
    let weight: f64 = (1..=k_terms)
        .map(|j| {
            let j = j as f64;
            2.0 * PI * (-2.0 * PI * j * x).exp() * 2.0 * j
        })
        .sum();
    let mut n = 16u64;
    while weight * abel_remainder(n, d_eff).bound > budget {
        n *= 2;
        if n > 1 << 24 {
            return Err(Error::UnattainableTolerance {
                requested: tol,
                reason: format!("inner sums at x = {x} need more than 2^24 terms"),
            });
        }
    }
    EvalParams::new(tol, k_terms, n, guard_delta)
}

/// `EvalParams` whose outer series use exactly `k_terms` terms.
pub fn fixed_terms(k_terms: u64, tol: f64, x: f64) -> Result<EvalParams> {
    let planned = plan(tol, x)?;
    let mut params = EvalParams::new(tol, k_terms, planned.n_terms, planned.guard_delta)?;
    params.truncation = Truncation::Exact;
    Ok(params)
}

pub(crate) fn distance_to_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Sum of a positive majorant `f(k)`, `k ≥ first`, whose ratio
/// `f(k+1)/f(k)` is nonincreasing: explicit terms until the ratio drops
/// below 0.95, then a geometric bound.
fn majorant_tail(first: u64, f: impl Fn(f64) -> f64) -> f64 {
    let mut acc = 0.0;
    let mut k = first as f64;
    for _ in 0..1_000_000 {
        let t = f(k);
        if t == 0.0 {
            return acc;
        }
        let r = f(k + 1.0) / t;
        if r < 0.95 {
            return acc + t / (1.0 - r);
        }
        acc += t;
        k += 1.0;
    }
    f64::INFINITY
}

/// Polynomial weight majorant: `k^p` for `p > 0`, otherwise the constant
/// `first^p`, which keeps the ratio nonincreasing.
fn poly_majorant(first: u64, power: i32) -> impl Fn(f64) -> f64 {
    move |k: f64| {
        if power > 0 {
            k.powi(power)
        } else {
            (first as f64).powi(power)
        }
    }
}

/// `Σ_{k≥first} k^p / sinh²(ρk)`.
pub(crate) fn csch2_tail(first: u64, rate: f64, power: i32) -> f64 {
    // sinh^{-2}(ρk) = 4q/(1−q)² ≤ 4q/(1−q_first)², q = e^{−2ρk}
    let denom = (-(-2.0 * rate * first as f64).exp_m1()).powi(2);
    let w = poly_majorant(first, power);
    majorant_tail(first, |k| 4.0 * w(k) * (-2.0 * rate * k).exp() / denom)
}

/// `Σ_{k≥first} k^p / (e^{2ρk} − 1)`.
pub(crate) fn lambert_tail(first: u64, rate: f64, power: i32) -> f64 {
    let denom = -(-2.0 * rate * first as f64).exp_m1();
    let w = poly_majorant(first, power);
    majorant_tail(first, |k| w(k) * (-2.0 * rate * k).exp() / denom)
}

/// Smallest `|k² − x²|` and `|k⁴ − x⁴|` over `k ≥ first`, `k ≠ exclude`.
pub(crate) fn min_gaps(first: u64, x: f64, exclude: Option<u64>) -> (f64, f64) {
    let base = x.floor() as i64;
    let mut best2 = f64::INFINITY;
    let mut best4 = f64::INFINITY;
    let candidates = [first as i64, base - 1, base, base + 1, base + 2];
    for &c in &candidates {
        if c < first as i64 || c < 1 || Some(c as u64) == exclude {
            continue;
        }
        let k = c as f64;
        let g2 = ((k - x) * (k + x)).abs();
        best2 = best2.min(g2);
        best4 = best4.min(g2 * (k * k + x * x));
    }
    (best2, best4)
}

/// `Σ_{k≥first} 2k / ((e^{2πk} − 1)|k² − x²|)`.
pub(crate) fn cot_partner_tail(first: u64, x: f64, exclude: Option<u64>) -> f64 {
    let (gap2, _) = min_gaps(first, x, exclude);
    2.0 * lambert_tail(first, PI, 1) / gap2
}

/// `Σ_{k≥first} |log|k⁴ − x⁴|| / sinh²(πk)`.
pub(crate) fn log_csch2_tail(first: u64, x: f64, exclude: Option<u64>) -> f64 {
    let (_, gap4) = min_gaps(first, x, exclude);
    let floor = (-gap4.ln()).max(0.0);
    let denom = (-(-2.0 * PI * first as f64).exp_m1()).powi(2);
    majorant_tail(first, |k| {
        4.0 * (-2.0 * PI * k).exp() / denom * (4.0 * (k + x).ln().max(0.0) + floor)
    })
}

/// Outer tail of the double series. With `|Σ sin/(k²+n²)| ≤ π/(2k)` and
/// `Σ k²/(n(k²+n²)) ≤ 3/2 + log k`, the k-th term is at most
/// `2π·k·(π/2 + 3/2 + log k)·e^{−2πkx}`.
pub(crate) fn exp_envelope_tail(first: u64, x: f64) -> f64 {
    majorant_tail(first, |k| {
        2.0 * PI * k * (0.5 * PI + 1.5 + k.ln()) * (-2.0 * PI * k * x).exp()
    })
}

/// Summation-by-parts order and remainder for inner sums started at `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct AbelRemainder {
    pub order: usize,
    pub bound: f64,
}

/// Largest summation-by-parts order tried.
const MAX_ABEL_ORDER: usize = 60;

/// After `p` summation-by-parts steps on `Σ_{n≥m} h(n) zⁿ` with
/// `h(n) = 1/(n − ik)` (real or imaginary part), what is left is
/// `wᵖ Σ_{n≥m} Δᵖh(n) zⁿ` with `|w| = 1/(2|sin πd|)` and
/// `Σ_{n≥m} |Δᵖh(n)| ≤ (p−1)!/(m(m+1)⋯(m+p−1))`. The order minimising
/// that bound is chosen.
pub(crate) fn abel_remainder(m: u64, d: f64) -> AbelRemainder {
    if d == 0.0 {
        return AbelRemainder { order: 0, bound: 0.0 };
    }
    let log_w = -(2.0 * (PI * d).sin()).ln();
    let mf = m as f64;
    let mut best = AbelRemainder {
        order: 0,
        bound: f64::INFINITY,
    };
    // log of (p−1)!/Π_{i<p}(m+i) built incrementally
    let mut log_ratio = 0.0;
    for p in 1..=MAX_ABEL_ORDER {
        log_ratio += ((p - 1).max(1) as f64).ln() - (mf + (p - 1) as f64).ln();
        let log_bound = p as f64 * log_w + log_ratio;
        let bound = log_bound.exp();
        if bound < best.bound {
            best = AbelRemainder { order: p, bound };
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn csch2(k: f64) -> f64 {
        1.0 / (PI * k).sinh().powi(2)
    }

    #[test]
    fn csch2_bound_matches_closed_form_and_dominates() {
        let b = tail_bound(TailFamily::Csch2, 11, 1.0).unwrap().bound;
        let closed = 4.0 * (-22.0 * PI).exp() / (1.0 - (-2.0 * PI).exp());
        assert!((b / closed - 1.0).abs() < 1e-12);
        let direct: f64 = (11..=1000).map(|k| csch2(k as f64)).sum();
        assert!(direct <= b);
        // small first indices, where the plain geometric formula is too tight
        for first in 1..=3u64 {
            let direct: f64 = (first..=200).map(|k| csch2(k as f64)).sum();
            assert!(direct <= tail_bound(TailFamily::Csch2, first, 1.0).unwrap().bound);
        }
    }

    #[test]
    fn exp_envelope_first_term() {
        let b = tail_bound(TailFamily::ExpEnvelope, 1, 1.0).unwrap().bound;
        assert!(b >= (-2.0 * PI).exp() * 2.0 * PI);
    }

    #[test]
    fn inner_cos_weighted() {
        let b = tail_bound(TailFamily::InnerCos, 100_000, 0.3).unwrap().bound;
        let weight = 2.0 * PI * (-2.0 * PI * 0.3).exp() * 2.0;
        assert!(weight * b <= 1e-10);
        assert_eq!(tail_bound(TailFamily::InnerSin, 50, 2.0).unwrap().bound, 0.0);
    }

    #[test]
    fn family_names_round_trip() {
        for f in [
            TailFamily::ExpEnvelope,
            TailFamily::Csch2,
            TailFamily::Lambert(-3),
            TailFamily::LogCsch2,
            TailFamily::InnerSin,
            TailFamily::InnerCos,
        ] {
            assert_eq!(f.to_string().parse::<TailFamily>().unwrap(), f);
        }
        assert_eq!("lambert".parse::<TailFamily>().unwrap(), TailFamily::Lambert(1));
        assert!(matches!(
            "bogus".parse::<TailFamily>(),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn plan_examples() {
        let p = plan(1e-13, 1.0).unwrap();
        assert!(p.k_terms <= 8, "{p:?}");
        assert!(p.k_terms >= ((40.0f64 / 1e-13).ln() / (2.0 * PI)).ceil() as u64);
        let p = plan(1e-6, 1.0).unwrap();
        assert!(p.k_terms <= 4, "{p:?}");
        let near = plan(1e-13, 1.0).unwrap();
        let far = plan(1e-13, 10.0).unwrap();
        assert!(far.n_terms < near.n_terms, "{near:?} {far:?}");
    }

    #[test]
    fn plan_rejects_bad_input() {
        assert!(matches!(
            plan(1e-17, 1.0),
            Err(Error::UnattainableTolerance { .. })
        ));
        assert!(matches!(plan(1e-10, -1.0), Err(Error::InvalidArgument { .. })));
    }

    #[test]
    fn abel_bound_shrinks_with_distance() {
        let near = abel_remainder(1000, 1e-3).bound;
        let far = abel_remainder(1000, 0.3).bound;
        assert!(far < near);
        assert_eq!(abel_remainder(10, 0.0).bound, 0.0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn brute(first: u64, f: impl Fn(f64) -> f64) -> f64 {
            (first..10 * first + 40).map(|k| f(k as f64).abs()).sum()
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(20))]

            #[test]
            fn bounds_dominate_direct_sums(first in 1u64..15, x in 0.05f64..6.0, p in -6i32..8) {
                let b = tail_bound(TailFamily::Csch2, first, x).unwrap().bound;
                prop_assert!(brute(first, csch2) <= b);
                let b = tail_bound(TailFamily::Lambert(p), first, x).unwrap().bound;
                let direct = brute(first, |k| k.powi(p) / (2.0 * PI * k).exp_m1());
                prop_assert!(direct <= b, "lambert {}: {} > {}", p, direct, b);
                let x = if x.fract() == 0.0 { x + 0.5 } else { x };
                let b = tail_bound(TailFamily::LogCsch2, first, x).unwrap().bound;
                let direct = brute(first, |k| (k.powi(4) - x.powi(4)).abs().ln() * csch2(k));
                prop_assert!(direct <= b, "log_csch2: {} > {}", direct, b);
            }

            #[test]
            fn bounds_decrease_strictly(first in 1u64..15, x in 0.05f64..5.0, p in -6i32..8) {
                let x = if x.fract() == 0.0 { x + 0.5 } else { x };
                for family in [
                    TailFamily::ExpEnvelope,
                    TailFamily::Csch2,
                    TailFamily::Lambert(p),
                    TailFamily::LogCsch2,
                    TailFamily::InnerSin,
                    TailFamily::InnerCos,
                ] {
                    let a = tail_bound(family, first, x).unwrap().bound;
                    let b = tail_bound(family, first + 1, x).unwrap().bound;
                    prop_assert!(b < a, "{}: {} then {}", family, a, b);
                }
            }

            #[test]
            fn gaps_are_minimal(first in 1u64..20, x in 0.1f64..25.0, skip in 0u64..3) {
                let exclude = Some(x.round() as u64 + skip).filter(|_| skip < 2);
                let (g2, g4) = min_gaps(first, x, exclude);
                for k in first..first + 60 {
                    if Some(k) == exclude {
                        continue;
                    }
                    let kf = k as f64;
                    prop_assert!(((kf - x) * (kf + x)).abs() >= g2);
                    prop_assert!((kf.powi(4) - x.powi(4)).abs() >= g4 * (1.0 - 1e-12));
                }
            }
        }
    }
}
