//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any FAIL.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rapsi::bernoulli::{bernoulli_over_factorial, shared_table, BigRational};
use rapsi::oracles::{
    digamma, lambert_integral_oracle, oracle_euler_gamma, psi_oracle, s_integral_oracle,
    zeta_direct_oracle, OracleConfig,
};
use rapsi::series::{
    asymptotic_residual, csch2_sum, double_series_s, gamma_any_x, gamma_at_integer,
    lambert_sum, log_coefficient_residual, odd_zeta_bernoulli_sum, psi_prime_ramanujan,
    psi_ramanujan, zeta_odd, zeta_odd_general,
};
use rapsi::{fixed_terms, plan, tail_bound, EvalParams, ModularPair, TailFamily};
use rapsi_cli::bench::bench;
use rapsi_cli::commands::Settings;
use rapsi_cli::report::{emit, Format, Report};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    format!("error: {e}")
}

fn k_only(k: u64) -> EvalParams {
    EvalParams::new(1e-15, k, 16, rapsi::DEFAULT_GUARD_DELTA)
        .unwrap()
        .exact()
}

const ONE_MINUS_GAMMA: f64 = 0.42278433509846714;

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = gamma_at_integer(1, &fixed_terms(5, 1e-14, 1.0).map_err(fail)?).map_err(fail)?;
    let elapsed = start.elapsed();
    let err = (g.intermediate - ONE_MINUS_GAMMA).abs();
    let digits = format!("{:.15}", g.intermediate)[2..15].to_string();
    let printed_gap = (g.intermediate - 0.4227843350984).abs();
    ensure(
        err <= 5e-14 && digits == "4227843350984" && g.k_used == 5 && elapsed < Duration::from_secs(1),
        format!(
            "1-gamma = {:.17}, |err| = {err:.2e}, 13 digits 0.{digits}, gap to printed value {printed_gap:.2e}, k = {}, {elapsed:?}",
            g.intermediate, g.k_used
        ),
    )
}

fn criterion_2() -> Outcome {
    let s = csch2_sum(&k_only(10));
    let tail = tail_bound(TailFamily::Csch2, 11, 0.0).map_err(fail)?.bound;
    let residual = s.value + tail - (1.0 / 6.0 - 1.0 / (2.0 * PI));
    ensure(
        residual.abs() <= 1e-15,
        format!("sum + tail - target = {residual:.2e} (tail {tail:.2e})"),
    )
}

fn criterion_3() -> Outcome {
    let p = k_only(40);
    let table = shared_table();
    let one = lambert_sum(1, &p).value - (1.0 / 24.0 - 1.0 / (8.0 * PI));
    let mut worst_sum = 0f64;
    let mut worst_quad = 0f64;
    for m in [3u32, 5] {
        let bf = bernoulli_over_factorial(table, 2 * m as usize).map_err(fail)?;
        // B_{2m}/(4m) from B_{2m}/(2m)! times (2m)!
        let factorial = rapsi::bernoulli::factorial(2 * m as usize);
        let target = rapsi::bernoulli::rational_to_f64(
            &(bf * BigRational::from_integer(factorial) / BigRational::from_integer((4 * m).into())),
        );
        let s = lambert_sum(2 * m as i32 - 1, &p).value;
        worst_sum = worst_sum.max((s - target).abs());
        let q = lambert_integral_oracle(2 * m - 1, 20_000).map_err(fail)?;
        worst_quad = worst_quad.max((q - target).abs());
    }
    ensure(
        one.abs() <= 1e-15 && worst_sum <= 1e-14 && worst_quad <= 1e-10,
        format!("power 1: {one:.2e}, powers 5/9: {worst_sum:.2e}, integrals: {worst_quad:.2e}"),
    )
}

fn odd_zetas() -> Result<Vec<f64>, String> {
    let p = EvalParams::new(1e-15, 64, 16, rapsi::DEFAULT_GUARD_DELTA).map_err(fail)?;
    (1..=3)
        .map(|n| zeta_odd(n, shared_table(), &p).map(|v| v.value).map_err(fail))
        .collect()
}

fn criterion_4() -> Outcome {
    let cfg = OracleConfig::default();
    let mut worst = 0f64;
    let mut slowest = Duration::ZERO;
    let p = EvalParams::new(1e-15, 64, 16, rapsi::DEFAULT_GUARD_DELTA).map_err(fail)?;
    for n in 1..=3u64 {
        let start = Instant::now();
        let v = zeta_odd(n, shared_table(), &p).map_err(fail)?;
        slowest = slowest.max(start.elapsed());
        let direct = zeta_direct_oracle(2.0 * n as f64 + 1.0, &cfg).map_err(fail)?;
        worst = worst.max((v.value - direct).abs());
    }
    let j = odd_zeta_bernoulli_sum(1, shared_table()).map_err(fail)?;
    let exact = j == BigRational::new(7.into(), 720.into());
    ensure(
        worst <= 1e-12 && exact && slowest < Duration::from_secs(1),
        format!("max |err| = {worst:.2e}, j-sum = {j}, slowest {slowest:?}"),
    )
}

fn criterion_5() -> Outcome {
    let reference = odd_zetas()?;
    let p = EvalParams::new(1e-15, 64, 16, rapsi::DEFAULT_GUARD_DELTA).map_err(fail)?;
    let mut worst = 0f64;
    for n in 1..=2u64 {
        for alpha in [PI, PI * PI / 2.0, 2.0 * PI * PI] {
            let pair = ModularPair::from_alpha(alpha).map_err(fail)?;
            let v = zeta_odd_general(n, &pair, shared_table(), &p).map_err(fail)?;
            worst = worst.max((v.value - reference[n as usize - 1]).abs());
        }
    }
    ensure(worst <= 1e-11, format!("max |difference| = {worst:.2e}"))
}

fn criterion_6() -> Outcome {
    let cfg = OracleConfig::default();
    let start = Instant::now();
    let mut worst = 0f64;
    let mut max_k = 0;
    for x in [0.25, 0.5, 1.5, 2.75, 10.3, 1.0, 2.0, 3.0] {
        let v = psi_ramanujan(x, &plan(1e-12, x).map_err(fail)?).map_err(fail)?;
        worst = worst.max((v.value - psi_oracle(x, &cfg).map_err(fail)?).abs());
        max_k = max_k.max(v.k_used);
    }
    let elapsed = start.elapsed();
    ensure(
        worst <= 1e-11 && max_k <= 10 && elapsed < Duration::from_secs(5),
        format!("max |err| = {worst:.2e}, max k_used = {max_k}, {elapsed:?}"),
    )
}

fn criterion_7() -> Outcome {
    let mut worst = 0f64;
    for x in [0.3, 1.2] {
        let v = double_series_s(x, &plan(1e-13, x).map_err(fail)?).map_err(fail)?;
        let q = s_integral_oracle(x, 200_000).map_err(fail)?;
        worst = worst.max((v.value - q).abs());
    }
    ensure(worst <= 1e-9, format!("max |S - quadrature| = {worst:.2e}"))
}

fn criterion_8() -> Outcome {
    let gamma = -digamma(1.0, &OracleConfig::default()).map_err(fail)?;
    let mut values = Vec::new();
    for x in [0.5, 2.25, 6.75] {
        values.push(gamma_any_x(x, &plan(1e-13, x).map_err(fail)?).map_err(fail)?.value);
    }
    let hi = values.iter().cloned().fold(f64::MIN, f64::max);
    let lo = values.iter().cloned().fold(f64::MAX, f64::min);
    let worst = values.iter().map(|v| (v - gamma).abs()).fold(0.0, f64::max);
    ensure(
        hi - lo <= 2e-11 && worst <= 1e-10 && (gamma - oracle_euler_gamma()).abs() <= 1e-15,
        format!("spread {:.2e}, max |gamma err| = {worst:.2e}", hi - lo),
    )
}

fn criterion_9() -> Outcome {
    let h = 1e-5;
    let mut worst = 0f64;
    for x in [0.4, 1.6, 3.3] {
        let p = plan(1e-14, x).map_err(fail)?;
        let d = psi_prime_ramanujan(x, &p).map_err(fail)?.value;
        let up = psi_ramanujan(x + h, &p).map_err(fail)?.value;
        let down = psi_ramanujan(x - h, &p).map_err(fail)?.value;
        worst = worst.max((d - (up - down) / (2.0 * h)).abs());
    }
    let half = psi_prime_ramanujan(0.5, &plan(1e-14, 0.5).map_err(fail)?).map_err(fail)?.value;
    let closed = (half - (PI * PI / 2.0 - 4.0)).abs();
    ensure(
        worst <= 1e-7 && closed <= 1e-10,
        format!("max finite-difference gap {worst:.2e}, x = 0.5 gap {closed:.2e}"),
    )
}

fn criterion_10() -> Outcome {
    let p = EvalParams::new(1e-15, 64, 16, rapsi::DEFAULT_GUARD_DELTA).map_err(fail)?;
    let mut scaled = Vec::new();
    for n in [2u32, 5, 10, 20] {
        let x = n as f64 + 0.5;
        scaled.push(x * asymptotic_residual(x, &p).map_err(fail)?.value.abs());
    }
    let coeff = log_coefficient_residual(&p).map_err(fail)?.value;
    ensure(
        scaled[3] <= 2.0 * scaled[0] && coeff.abs() <= 1e-13,
        format!(
            "x|r| = [{}], coefficient residual {coeff:.2e}",
            scaled.iter().map(|v| format!("{v:.3e}")).collect::<Vec<_>>().join(", ")
        ),
    )
}

fn criterion_11() -> Outcome {
    let reports = bench(2.5, &[1e-6], &Settings::default()).map_err(fail)?;
    let ram = reports.iter().find(|r| r.method == "ramanujan").ok_or("no ramanujan record")?;
    let cls = reports.iter().find(|r| r.method == "classical_series").ok_or("no classical record")?;

    let mut table = Vec::new();
    emit(&mut table, &reports, Format::Plain).map_err(fail)?;
    let table = String::from_utf8(table).map_err(fail)?;
    let widths: Vec<usize> = table.lines().map(|l| l.split('\t').count()).collect();
    let table_ok = widths.len() == reports.len() + 1 && widths.iter().all(|&w| w == widths[0]);

    let mut lines = Vec::new();
    emit(&mut lines, &reports, Format::Json).map_err(fail)?;
    let parsed: Result<Vec<Report>, _> = String::from_utf8(lines)
        .map_err(fail)?
        .lines()
        .map(serde_json::from_str)
        .collect();
    let json_ok = parsed.map(|p| p == reports).unwrap_or(false);

    ensure(
        ram.k_used <= 5 && cls.n_used >= 100_000 && table_ok && json_ok,
        format!(
            "ramanujan k_used = {}, classical terms = {}, table rows {}, json round trip {json_ok}",
            ram.k_used,
            cls.n_used,
            widths.len()
        ),
    )
}

/// 64-bit LCG (Knuth's MMIX constants); deterministic draws in [0, 1).
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn criterion_12() -> Outcome {
    let cfg = OracleConfig::default();
    let mut rng = Lcg(20_240_917);
    let mut worst_ratio = 0f64;
    let mut drawn = 0;
    while drawn < 20 {
        let x = 0.05 + 24.95 * rng.next();
        let tol = 10f64.powf(-(3.0 + 10.0 * rng.next()));
        let m = x.round();
        if m >= 1.0 && (x - m).abs() < rapsi::DEFAULT_GUARD_DELTA {
            continue;
        }
        let v = psi_ramanujan(x, &plan(tol, x).map_err(fail)?).map_err(fail)?;
        let err = (v.value - psi_oracle(x, &cfg).map_err(fail)?).abs();
        if err > tol + 1e-13 {
            return Err(format!("x = {x}, tol = {tol:.1e}: error {err:.2e}"));
        }
        worst_ratio = worst_ratio.max(err / tol);
        drawn += 1;
    }
    Ok(format!("20 draws, worst error/tol = {worst_ratio:.2e}"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("five-term 1-gamma", criterion_1),
        ("csch2 identity", criterion_2),
        ("Lambert identities", criterion_3),
        ("odd zeta values", criterion_4),
        ("modular pair zeta", criterion_5),
        ("psi against oracle", criterion_6),
        ("double series against quadrature", criterion_7),
        ("gamma from any x", criterion_8),
        ("derivative", criterion_9),
        ("asymptotic behaviour", criterion_10),
        ("convergence benchmark", criterion_11),
        ("planner soundness", criterion_12),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
