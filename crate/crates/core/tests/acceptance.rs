//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use sphere_designs::construct::poly::root_triple;
use sphere_designs::construct::{
    fixture, improved_snub_cube, named, regular_snub_cube, IntegerPolynomial, FIXTURE_NAMES,
    IMPROVED_SNUB_SEXTIC,
};
use sphere_designs::invariants::{e_t_closed, e_t_series, predicted_n};
use sphere_designs::optimize::{pattern_search, polish, SearchSpec};
use sphere_designs::quadrature::{bajnok_product, interval_design, lower_bound};
use sphere_designs::{discrepancy, verified_strength, Design};

type Check = Result<String, String>;
type Criterion = fn() -> Check;
type Suite = fn() -> Result<(), String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within_budget(start: Instant, budget: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < budget, format!("took {took:.2?}, budget {budget:?}"))
}

/// Verifies exactly `t` at `tol` and misses `t + 1` by a visible margin.
fn exact_strength(d: &Design, t: usize, tol: f64) -> Result<(), String> {
    let report = verified_strength(d, t + 1, tol);
    ensure(
        report.verified_t == t,
        format!("n={} verified {} not {t}", d.n(), report.verified_t),
    )?;
    let next = report.max_abs_residual(t + 1).unwrap_or(0.0);
    ensure(
        next > 1e-8,
        format!("n={} degree {} residual only {next:e}", d.n(), t + 1),
    )
}

fn improved_snub() -> Check {
    let start = Instant::now();
    let d = improved_snub_cube().map_err(|e| e.to_string())?;
    let expected = [0.86624682, 0.42251865, 0.26663540];
    for p in d.points() {
        let mut c = p.coords().map(f64::abs);
        c.sort_by(|a, b| b.total_cmp(a));
        for (got, want) in c.iter().zip(expected) {
            ensure(
                (got - want).abs() < 5e-9,
                format!("coordinate {got} vs {want}"),
            )?;
        }
    }
    exact_strength(&d, 7, 1e-24)?;
    let deg8 = verified_strength(&d, 8, 1e-24).degree_sumsq(8).unwrap();
    ensure(deg8 >= 1e-8, format!("degree-8 sum {deg8:e}"))?;
    within_budget(start, Duration::from_secs(1))?;
    Ok(format!(
        "A,B,C to 8 decimals, strength 7, degree-8 sum {deg8:.3e}"
    ))
}

fn symmetric_identities() -> Check {
    let p = IntegerPolynomial::new(IMPROVED_SNUB_SEXTIC.to_vec()).unwrap();
    let [a, b, c] = root_triple(&p).map_err(|e| e.to_string())?;
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let sums = [
        (a2.powi(3) + b2.powi(3) + c2.powi(3), 3.0 / 7.0),
        (
            a2 * a2 * (b2 + c2) + b2 * b2 * (a2 + c2) + c2 * c2 * (a2 + b2),
            6.0 / 35.0,
        ),
        (a2 * b2 * c2, 1.0 / 105.0),
    ];
    let worst = sums
        .iter()
        .map(|(got, want)| (got - want).abs())
        .fold(0.0, f64::max);
    ensure(worst <= 1e-12, format!("worst deviation {worst:e}"))?;
    Ok(format!("worst deviation {worst:.1e}"))
}

fn regular_snub() -> Check {
    let d = regular_snub_cube().map_err(|e| e.to_string())?;
    exact_strength(&d, 3, 1e-24)?;
    Ok("3-design, not 4-design".into())
}

fn small_table() -> Check {
    let start = Instant::now();
    let cases = [
        ("tetrahedron", 4, 2),
        ("octahedron", 6, 3),
        ("cube", 8, 3),
        ("icosahedron", 12, 5),
        ("dodecahedron", 20, 5),
        ("improved-snub-cube", 24, 7),
        ("design-25-5", 25, 5),
        ("design-30-7", 30, 7),
        ("design-32-7", 32, 7),
    ];
    for (name, n, t) in cases {
        let d = named(name).map_err(|e| e.to_string())?;
        ensure(d.n() == n, format!("{name}: {} points", d.n()))?;
        exact_strength(&d, t, 1e-24).map_err(|e| format!("{name}: {e}"))?;
    }
    within_budget(start, Duration::from_secs(10))?;
    Ok(format!(
        "{} designs at their strength, all fail t+1",
        cases.len()
    ))
}

fn table_fixtures() -> Check {
    let start = Instant::now();
    let stated = [8, 10, 11, 13, 14, 16, 21];
    for (name, t) in FIXTURE_NAMES
        .iter()
        .filter(|n| n.starts_with("orbits-"))
        .zip(stated)
    {
        let d = fixture(name).map_err(|e| e.to_string())?;
        let got = verified_strength(&d, t, 1e-12).verified_t;
        ensure(got >= t, format!("{name}: verified {got} < {t}"))?;
    }
    let polished = polish(&fixture("orbits-36-8").unwrap(), 8).map_err(|e| e.to_string())?;
    let delta = discrepancy(&polished.design, 8);
    ensure(
        delta <= 1e-24,
        format!("36-point discrepancy after polish {delta:e}"),
    )?;
    within_budget(start, Duration::from_secs(60))?;
    Ok(format!(
        "7 fixtures at stated t, 36-point discrepancy {delta:.2e} after polish"
    ))
}

fn molien() -> Check {
    let start = Instant::now();
    for t in 6..=500 {
        ensure(
            e_t_closed(t) == Some(e_t_series(t)),
            format!("closed form differs at t={t}"),
        )?;
    }
    let table = [
        12, 12, 12, 24, 36, 36, 48, 60, 72, 84, 96, 108, 132, 144, 156, 180, 204, 216, 240, 264,
        288, 312,
    ];
    for (t, n) in (3..=24).zip(table) {
        ensure(
            predicted_n(t) == Some(n),
            format!("t={t}: {:?} vs {n}", predicted_n(t)),
        )?;
    }
    within_budget(start, Duration::from_secs(1))?;
    Ok("closed form exact to t=500, 22 predicted sizes".into())
}

fn bajnok() -> Check {
    let start = Instant::now();
    let iv = interval_design(6, 6).map_err(|e| e.to_string())?;
    let d = bajnok_product(&iv, 7).map_err(|e| e.to_string())?;
    ensure(d.n() == 42, format!("{} points", d.n()))?;
    let got = verified_strength(&d, 6, 1e-20).verified_t;
    ensure(got >= 6, format!("verified {got}"))?;
    within_budget(start, Duration::from_secs(1))?;
    Ok("42 points, strength 6 at 1e-20".into())
}

// Independent reading of the bound: exact rational (t+1)(t+3)/4 or (t+2)²/4,
// rounded up, plus one outside t = 1, 2, 3, 5.
fn bound_oracle(t: usize) -> usize {
    let num = if t % 2 == 1 {
        (t + 1) * (t + 3)
    } else {
        (t + 2) * (t + 2)
    };
    let mut n = num / 4 + usize::from(num % 4 != 0);
    if ![1, 2, 3, 5].contains(&t) {
        n += 1;
    }
    n
}

fn lower_bounds() -> Check {
    let frozen = [2, 4, 6, 10, 12, 17, 21, 26, 31, 37, 43, 50, 57];
    let oracle: Vec<usize> = (1..=13).map(bound_oracle).collect();
    ensure(oracle == frozen, format!("oracle {oracle:?}"))?;
    let got: Vec<usize> = (1..=13).map(lower_bound).collect();
    ensure(got == frozen, format!("lower_bound {got:?}"))?;
    Ok(format!("{got:?}"))
}

fn search_reproduction() -> Check {
    let start = Instant::now();
    let spec = SearchSpec {
        restarts: 20,
        seed: 7,
        ..SearchSpec::new(24, 7, "[3,4]+")
    };
    let result = pattern_search(&spec, None).map_err(|e| e.to_string())?;
    ensure(
        result.criterion <= 1e-24,
        format!("criterion {:e}", result.criterion),
    )?;
    let found = result.design.inner_product_profile();
    let reference = improved_snub_cube().unwrap().inner_product_profile();
    let gap = found
        .iter()
        .zip(&reference)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    ensure(gap <= 1e-6, format!("profile gap {gap:e}"))?;
    within_budget(start, Duration::from_secs(300))?;
    Ok(format!(
        "criterion {:.2e} after {} restart(s), profile gap {gap:.1e}",
        result.criterion, result.restarts_used
    ))
}

fn properties() -> Check {
    let suites: [(&str, Suite); 4] = [
        ("rotation invariance", common::run_rotation_invariance),
        ("union strength", common::run_union),
        ("orbit size divides order", common::run_orbits),
        ("interval residuals", common::run_interval),
    ];
    for (name, suite) in suites {
        suite().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("4 suites x {} cases", common::CASES))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("improved snub cube", improved_snub),
        ("symmetric identities", symmetric_identities),
        ("regular snub cube", regular_snub),
        ("small designs", small_table),
        ("orbit-union fixtures", table_fixtures),
        ("invariant counts", molien),
        ("product designs", bajnok),
        ("lower bounds", lower_bounds),
        ("search reproduction", search_reproduction),
        ("property suites", properties),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {:>2} {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
