//! Property checks shared by the acceptance runner and the proptest suite.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sphere_designs::construct::{catalog_entry, named, CATALOG};
use sphere_designs::quadrature::{
    interval_design, random_rotation, union, INTERVAL_MIN_POINTS, INTERVAL_TOL,
};
use sphere_designs::symmetry::{orbit, CATALOG_LABELS};
use sphere_designs::{criterion, verified_strength, Design, RotationGroup, UnitPoint};

pub const CASES: u32 = 128;

/// Closed-form designs of positive strength, exact to rounding.
pub fn exact_designs() -> Vec<&'static str> {
    CATALOG
        .iter()
        .filter(|e| e.strength >= 1 && e.verify_tol <= 1e-24)
        .map(|e| e.name)
        .collect()
}

pub fn point_cloud() -> impl Strategy<Value = Vec<[f64; 3]>> {
    prop::collection::vec(
        prop::array::uniform3(-1.0..1.0f64).prop_filter("away from origin", |c| {
            c.iter().map(|x| x * x).sum::<f64>() > 1e-3
        }),
        2..40,
    )
}

pub fn rotation_invariance(coords: &[[f64; 3]], seed: u64, t: usize) -> Result<(), TestCaseError> {
    let Ok(d) = Design::from_coords(coords) else {
        return Ok(());
    };
    let r = random_rotation(&mut ChaCha8Rng::seed_from_u64(seed));
    let before = criterion(&d, t);
    let after = criterion(&d.transformed(&r), t);
    prop_assert!(
        (before - after).abs() <= 1e-10 * before.max(1.0),
        "t={} before={:e} after={:e}",
        t,
        before,
        after
    );
    Ok(())
}

pub fn union_preserves_strength(a: &str, b: &str) -> Result<(), TestCaseError> {
    let (da, db) = (named(a).unwrap(), named(b).unwrap());
    let t = catalog_entry(a)
        .unwrap()
        .strength
        .min(catalog_entry(b).unwrap().strength);
    let u = union(&da, &db).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(u.n(), da.n() + db.n());
    let report = verified_strength(&u, t, 1e-20);
    prop_assert!(
        report.verified_t >= t,
        "{} + {}: verified {} < {}",
        a,
        b,
        report.verified_t,
        t
    );
    Ok(())
}

/// Picks a representative: generic, on a rotation axis, or on a mirror plane.
pub fn orbit_divides_order(label: &str, pick: usize, v: [f64; 3]) -> Result<(), TestCaseError> {
    let g = RotationGroup::from_label(label).unwrap();
    let axes = g.rotation_axes();
    let normals = g.mirror_normals();
    let rep = match pick % 3 {
        1 if !axes.is_empty() => {
            let a = axes[pick / 3 % axes.len()];
            UnitPoint::new(a.x, a.y, a.z)
        }
        2 if !normals.is_empty() => {
            // project onto the mirror plane
            let n = normals[pick / 3 % normals.len()].normalize();
            let w = nalgebra::Vector3::from(v);
            let p = w - n * n.dot(&w);
            UnitPoint::new(p.x, p.y, p.z)
        }
        _ => UnitPoint::new(v[0], v[1], v[2]),
    };
    let Ok(rep) = rep else {
        return Ok(());
    };
    let size = orbit(&g, &rep).len();
    prop_assert!(
        size >= 1 && g.order().is_multiple_of(size),
        "{}: orbit {} of order {}",
        label,
        size,
        g.order()
    );
    Ok(())
}

pub fn interval_residuals(t: usize, extra: usize) -> Result<(), TestCaseError> {
    let n = INTERVAL_MIN_POINTS[t] + extra;
    let iv = interval_design(n, t).map_err(|e| TestCaseError::fail(format!("n={n} t={t}: {e}")))?;
    prop_assert!(
        iv.max_residual() <= INTERVAL_TOL,
        "n={} t={}: {:e}",
        n,
        t,
        iv.max_residual()
    );
    Ok(())
}

fn run<S: Strategy>(
    strategy: S,
    check: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, check).map_err(|e| e.to_string())
}

pub fn run_rotation_invariance() -> Result<(), String> {
    run((point_cloud(), any::<u64>(), 1..12usize), |(c, s, t)| {
        rotation_invariance(&c, s, t)
    })
}

pub fn run_union() -> Result<(), String> {
    let names = exact_designs();
    run((0..names.len(), 0..names.len()), |(i, j)| {
        union_preserves_strength(names[i], names[j])
    })
}

pub fn run_orbits() -> Result<(), String> {
    run(
        (
            0..CATALOG_LABELS.len(),
            any::<usize>(),
            prop::array::uniform3(-1.0..1.0f64),
        ),
        |(i, pick, v)| orbit_divides_order(CATALOG_LABELS[i], pick, v),
    )
}

pub fn run_interval() -> Result<(), String> {
    run((2..=11usize, 0..=4usize), |(t, extra)| {
        interval_residuals(t, extra)
    })
}
