//! Named designs: closed forms built from integer polynomial roots, regular
//! solids and other small configurations, and published numerical fixtures.

mod fixtures;
pub mod poly;

use std::f64::consts::{PI, TAU};

use crate::design::{Design, DesignMeta, UnitPoint};
use crate::error::{Error, Result};
use crate::symmetry::{config_to_design, OrbitConfig, RotationGroup};

pub use fixtures::{fixture, FIXTURE_NAMES};
pub use poly::{positive_roots, IntegerPolynomial};

/// `105W³ - 105W² + 21W - 1`, whose roots in `Z = √W` give the improved snub cube.
pub const IMPROVED_SNUB_SEXTIC: [i64; 4] = [-1, 21, -105, 105];
/// Root triple for the 24 + 6 point 7-design.
pub const TETRAKIS_SNUB_SEXTIC: [i64; 4] = [-1, 21, -84, 84];
/// Root triple for the 24 + 8 point 7-design.
pub const SNUB_PLUS_CUBE_SEXTIC: [i64; 4] = [-1, 441, -2835, 2835];
/// One sextic per coordinate of the regular snub cube, each with a single positive root.
pub const REGULAR_SNUB_SEXTICS: [[i64; 4]; 3] = [[-1, -3, 1, 7], [-1, 5, -3, 7], [-1, 17, -19, 7]];

/// Integer polynomial in `W = Z²` whose roots include the squared coordinates
/// of both orbit representatives of the 48-point 9-design.
pub const NINE_DESIGN_48_POLY: [i64; 19] = [
    -8269,
    2733318,
    -168429429,
    4880358000,
    -80424958320,
    770657554800,
    -3473862884100,
    -9766335726000,
    270106833039750,
    -2145915231232500,
    10602550092251250,
    -36735117403950000,
    92508869648475000,
    -170368273215000000,
    226833777359437500,
    -212133311066250000,
    131885512472109375,
    -48846486100781250,
    8141081016796875,
];

/// A named design with its documented strength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub n: usize,
    pub strength: usize,
    /// Per-degree tolerance at which `strength` is expected to verify as built.
    pub verify_tol: f64,
    pub summary: &'static str,
}

const fn entry(
    name: &'static str,
    n: usize,
    strength: usize,
    verify_tol: f64,
    summary: &'static str,
) -> CatalogEntry {
    CatalogEntry {
        name,
        n,
        strength,
        verify_tol,
        summary,
    }
}

/// Everything [`named`] can build.
pub const CATALOG: &[CatalogEntry] = &[
    entry("single-point", 1, 0, 1e-24, "one point"),
    entry("antipodal-pair", 2, 1, 1e-24, "two antipodal points"),
    entry(
        "triangle",
        3,
        1,
        1e-24,
        "equilateral triangle on the equator",
    ),
    entry("tetrahedron", 4, 2, 1e-24, "regular tetrahedron"),
    entry(
        "triangular-bipyramid",
        5,
        1,
        1e-24,
        "triangle plus both poles",
    ),
    entry("octahedron", 6, 3, 1e-24, "regular octahedron"),
    entry("cube", 8, 3, 1e-24, "cube"),
    entry(
        "pentagonal-prism",
        10,
        3,
        1e-24,
        "two pentagons at z = ±1/√3, twisted by π/5",
    ),
    entry("icosahedron", 12, 5, 1e-24, "regular icosahedron"),
    entry("dodecahedron", 20, 5, 1e-24, "regular dodecahedron"),
    entry("regular-snub-cube", 24, 3, 1e-24, "regular snub cube"),
    entry(
        "improved-snub-cube",
        24,
        7,
        1e-24,
        "snub cube moved onto an exact 7-design",
    ),
    entry(
        "design-25-5",
        25,
        5,
        1e-24,
        "five families of five points, group [2,5]+",
    ),
    entry("design-30-7", 30, 7, 1e-24, "snub orbit plus octahedron"),
    entry("design-32-7", 32, 7, 1e-24, "snub orbit plus cube"),
    entry(
        "orbits-36-8",
        36,
        8,
        1e-16,
        "three [3,3]+ orbits, published 8 digits",
    ),
    entry(
        "orbits-60-10",
        60,
        10,
        1e-16,
        "five [3,3]+ orbits, published 8 digits",
    ),
    entry(
        "orbits-72-11",
        72,
        11,
        1e-16,
        "six [3,3]+ orbits, published 8 digits",
    ),
    entry(
        "orbits-96-13",
        96,
        13,
        1e-16,
        "eight [3,3]+ orbits, published 8 digits",
    ),
    entry(
        "orbits-108-14",
        108,
        14,
        1e-16,
        "nine [3,3]+ orbits, published 8 digits",
    ),
    entry(
        "orbits-144-16",
        144,
        16,
        1e-16,
        "twelve [3,3]+ orbits, published 8 digits",
    ),
    entry(
        "orbits-240-21",
        240,
        21,
        1e-16,
        "twenty [3,3]+ orbits, published 8 digits",
    ),
    entry(
        "design-23-5-seed",
        23,
        5,
        1e-9,
        "4-digit seed, group [2]+; polish before use",
    ),
    entry(
        "design-48-9-seed",
        48,
        9,
        1e-9,
        "4-digit seed, two [3,4]+ orbits; polish before use",
    ),
];

pub fn catalog_entry(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

/// Builds any design listed in [`CATALOG`].
pub fn named(name: &str) -> Result<Design> {
    match name {
        "improved-snub-cube" => improved_snub_cube(),
        "regular-snub-cube" => regular_snub_cube(),
        "design-25-5" => design_25_5(0.0),
        "design-30-7" => design_30_7(),
        "design-32-7" => design_32_7(),
        _ if FIXTURE_NAMES.contains(&name) => fixture(name),
        _ => platonic_and_small(name),
    }
}

fn meta(t: usize, group: &str, source: &str) -> DesignMeta {
    DesignMeta {
        target_t: Some(t),
        group_label: Some(group.to_string()),
        source: Some(source.to_string()),
        requires_polish: false,
    }
}

fn octahedral_orbits(reps: &[[f64; 3]]) -> Result<Design> {
    let group = RotationGroup::from_label("[3,4]+")?;
    let reps = reps
        .iter()
        .map(|c| UnitPoint::new(c[0], c[1], c[2]))
        .collect::<Result<Vec<_>>>()?;
    config_to_design(&OrbitConfig::new(group, reps))
}

fn snub_triple(coeffs: [i64; 4]) -> Result<[f64; 3]> {
    poly::root_triple(&IntegerPolynomial::new(coeffs.to_vec())?)
}

/// The 24 images of `(A, B, C)` under `[3,4]+`, an exact 7-design.
pub fn improved_snub_cube() -> Result<Design> {
    let abc = snub_triple(IMPROVED_SNUB_SEXTIC)?;
    Ok(octahedral_orbits(&[abc])?.with_meta(meta(
        7,
        "[3,4]+",
        "closed form: roots of 105Z^6 - 105Z^4 + 21Z^2 - 1",
    )))
}

/// The regular snub cube; a 3-design but not a 4-design.
pub fn regular_snub_cube() -> Result<Design> {
    let mut abc = [0.0; 3];
    for (c, coeffs) in abc.iter_mut().zip(REGULAR_SNUB_SEXTICS) {
        *c = poly::unique_positive_root(&IntegerPolynomial::new(coeffs.to_vec())?)?;
    }
    Ok(octahedral_orbits(&[abc])?.with_meta(meta(
        3,
        "[3,4]+",
        "closed form: one sextic per coordinate",
    )))
}

/// Snub orbit plus the six octahedron vertices.
pub fn design_30_7() -> Result<Design> {
    let abc = snub_triple(TETRAKIS_SNUB_SEXTIC)?;
    Ok(octahedral_orbits(&[abc, [1.0, 0.0, 0.0]])?.with_meta(meta(
        7,
        "[3,4]+",
        "closed form: roots of 84Z^6 - 84Z^4 + 21Z^2 - 1",
    )))
}

/// Snub orbit plus the eight cube vertices.
pub fn design_32_7() -> Result<Design> {
    let abc = snub_triple(SNUB_PLUS_CUBE_SEXTIC)?;
    let c = 1.0 / 3f64.sqrt();
    Ok(octahedral_orbits(&[abc, [c, c, c]])?.with_meta(meta(
        7,
        "[3,4]+",
        "closed form: roots of 2835Z^6 - 2835Z^4 + 441Z^2 - 1",
    )))
}

/// Radii of the two tilted pentagon families of the 25-point design.
pub fn design_25_radii() -> (f64, f64) {
    let s11 = 11f64.sqrt();
    let scale = 1.0 / (2.0 * 3f64.sqrt());
    (scale * (7.0 - s11).sqrt(), scale * (7.0 + s11).sqrt())
}

/// Phase of the outer pentagon families that balances the degree-5 moments
/// for a given phase of the inner ones.
///
/// Solves `cos 5x = (g₁/g₂)⁵ cos 5φ₁ - g₂⁻⁵ / 2` on `[3π/5, 4π/5]`, where the
/// left side increases monotonically from -1 to 1.
pub fn design_25_outer_phase(phase1: f64) -> f64 {
    let (g1, g2) = design_25_radii();
    let target = (g1 / g2).powi(5) * (5.0 * phase1).cos() - 0.5 / g2.powi(5);
    let (mut lo, mut hi) = (0.6 * PI, 0.8 * PI);
    while hi - lo > 4.0 * f64::EPSILON {
        let mid = 0.5 * (lo + hi);
        if (5.0 * mid).cos() < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A member of the one-parameter family of 25-point 5-designs.
///
/// `phase1` rotates the inner pentagon pair; the outer pair is re-phased to keep
/// the design exact.
pub fn design_25_5(phase1: f64) -> Result<Design> {
    let (g1, g2) = design_25_radii();
    let h1 = (1.0 - g1 * g1).sqrt();
    let h2 = (1.0 - g2 * g2).sqrt();
    let phase2 = design_25_outer_phase(phase1);
    let mut coords = Vec::with_capacity(25);
    for k in 0..5 {
        let a = k as f64 * TAU / 5.0;
        let (s, c) = a.sin_cos();
        let (s1, c1) = (a + phase1).sin_cos();
        let (s2, c2) = (a + phase2).sin_cos();
        coords.push([0.0, c, s]);
        coords.push([h1, -g1 * c1, -g1 * s1]);
        coords.push([-h1, -g1 * c1, g1 * s1]);
        coords.push([h2, g2 * c2, g2 * s2]);
        coords.push([-h2, g2 * c2, -g2 * s2]);
    }
    Ok(Design::from_coords(&coords)?.with_meta(meta(
        5,
        "[2,5]+",
        "closed form: five pentagon families",
    )))
}

/// Regular solids and the small designs with infinite or dihedral symmetry.
pub fn platonic_and_small(name: &str) -> Result<Design> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let (coords, t, group): (Vec<[f64; 3]>, usize, &str) = match name {
        "single-point" => (vec![[0.0, 0.0, 1.0]], 0, "∞"),
        "antipodal-pair" => (vec![[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]], 1, "∞"),
        "triangle" => (polygon(3, 0.0, 0.0), 1, "[2,3]"),
        "triangular-bipyramid" => {
            let mut c = polygon(3, 0.0, 0.0);
            c.extend([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]);
            (c, 1, "[2,3]")
        }
        "tetrahedron" => (
            vec![
                [1.0, 1.0, 1.0],
                [1.0, -1.0, -1.0],
                [-1.0, 1.0, -1.0],
                [-1.0, -1.0, 1.0],
            ],
            2,
            "[3,3]",
        ),
        "octahedron" => (
            vec![
                [1.0, 0.0, 0.0],
                [-1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, -1.0, 0.0],
                [0.0, 0.0, 1.0],
                [0.0, 0.0, -1.0],
            ],
            3,
            "[3,4]",
        ),
        "cube" => (sign_patterns([1.0, 1.0, 1.0]), 3, "[3,4]"),
        "pentagonal-prism" => {
            let z = 1.0 / 3f64.sqrt();
            let mut c = polygon(5, z, 0.0);
            c.extend(polygon(5, -z, PI / 5.0));
            (c, 3, "[2+,10]")
        }
        "icosahedron" => (cyclic(&sign_patterns([0.0, 1.0, phi])), 5, "[3,5]"),
        "dodecahedron" => {
            let mut c = sign_patterns([1.0, 1.0, 1.0]);
            c.extend(cyclic(&sign_patterns([0.0, 1.0 / phi, phi])));
            (c, 5, "[3,5]")
        }
        _ => return Err(Error::UnknownDesign(name.to_string())),
    };
    Ok(Design::from_coords(&coords)?.with_meta(meta(t, group, "standard coordinates")))
}

/// `m` equally spaced points at height `z`, starting at azimuth `phase`.
fn polygon(m: usize, z: f64, phase: f64) -> Vec<[f64; 3]> {
    let r = (1.0 - z * z).sqrt();
    (0..m)
        .map(|k| {
            let a = phase + k as f64 * TAU / m as f64;
            [r * a.cos(), r * a.sin(), z]
        })
        .collect()
}

/// All sign changes of `v`, skipping repeats from zero entries.
fn sign_patterns(v: [f64; 3]) -> Vec<[f64; 3]> {
    let mut out: Vec<[f64; 3]> = Vec::new();
    for mask in 0..8 {
        let mut p = v;
        for (i, c) in p.iter_mut().enumerate() {
            if mask >> i & 1 == 1 {
                *c = -*c;
            }
        }
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Adds the two cyclic coordinate shifts of every point.
fn cyclic(points: &[[f64; 3]]) -> Vec<[f64; 3]> {
    points
        .iter()
        .flat_map(|&[x, y, z]| [[x, y, z], [y, z, x], [z, x, y]])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::verified_strength;
    use crate::symmetry::detect_symmetry;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn snub_triples_lie_on_the_sphere() {
        for c in [
            IMPROVED_SNUB_SEXTIC,
            TETRAKIS_SNUB_SEXTIC,
            SNUB_PLUS_CUBE_SEXTIC,
        ] {
            let [a, b, cc] = snub_triple(c).unwrap();
            assert!(close(a * a + b * b + cc * cc, 1.0, 1e-12));
        }
    }

    #[test]
    fn improved_snub_cube_identities() {
        let [a, b, c] = snub_triple(IMPROVED_SNUB_SEXTIC).unwrap();
        let (a2, b2, c2) = (a * a, b * b, c * c);
        assert!(close(
            a2.powi(3) + b2.powi(3) + c2.powi(3),
            3.0 / 7.0,
            1e-12
        ));
        let mixed = a2 * a2 * (b2 + c2) + b2 * b2 * (c2 + a2) + c2 * c2 * (a2 + b2);
        assert!(close(mixed, 6.0 / 35.0, 1e-12));
        assert!(close(a2 * b2 * c2, 1.0 / 105.0, 1e-12));
    }

    #[test]
    fn closed_forms_have_documented_strength() {
        for (d, t) in [
            (improved_snub_cube().unwrap(), 7),
            (regular_snub_cube().unwrap(), 3),
            (design_30_7().unwrap(), 7),
            (design_32_7().unwrap(), 7),
            (design_25_5(0.0).unwrap(), 5),
        ] {
            let report = verified_strength(&d, t + 1, 1e-24);
            assert_eq!(report.verified_t, t, "{:?}", d.meta.source);
            assert!(report.max_abs_residual(t + 1).unwrap() > 1e-8);
        }
    }

    #[test]
    fn regular_snub_coordinates() {
        let d = regular_snub_cube().unwrap();
        let top = d.points().iter().map(|p| p.x()).fold(f64::MIN, f64::max);
        assert!(close(top, 0.8503, 1e-4));
        assert_eq!(detect_symmetry(&d, 1e-8).label, "[3,4]+");
    }

    #[test]
    fn quintic_branch() {
        let (g1, g2) = design_25_radii();
        assert!(close(g1, 0.5540, 1e-4) && close(g2, 0.9272, 1e-4));
        let p2 = design_25_outer_phase(0.0);
        assert!(close(p2.cos(), -0.4670, 1e-4));
        assert!(close(p2, 2.057, 1e-3));
        // the same root through the expanded quintic
        let s11 = 11f64.sqrt();
        let k = ((30.0 - 7.0 * s11) / 19.0).powf(2.5) - 0.5 * (6.0 * (7.0 - s11) / 19.0).powf(2.5);
        let z = p2.cos();
        assert!(close(
            16.0 * z.powi(5) - 20.0 * z.powi(3) + 5.0 * z,
            k,
            1e-13
        ));
    }

    #[test]
    fn phased_25_point_designs() {
        for phase in [0.3, 0.7, 2.0] {
            let d = design_25_5(phase).unwrap();
            assert_eq!(verified_strength(&d, 6, 1e-20).verified_t, 5);
        }
    }

    #[test]
    fn catalog_matches_documented_strength_and_group() {
        for e in CATALOG {
            let d = named(e.name).unwrap();
            assert_eq!(d.n(), e.n, "{}", e.name);
            let report = verified_strength(&d, e.strength + 1, e.verify_tol);
            assert_eq!(report.verified_t, e.strength, "{}", e.name);
            if e.n > 1 {
                assert!(
                    report.max_abs_residual(e.strength + 1).unwrap() > 1e-8,
                    "{}",
                    e.name
                );
            }
            if (3..=20).contains(&e.n) {
                let info = detect_symmetry(&d, 1e-8);
                assert_eq!(Some(info.label), d.meta.group_label, "{}", e.name);
            }
        }
    }

    #[test]
    fn snub_family_symmetry() {
        for d in [
            improved_snub_cube().unwrap(),
            design_30_7().unwrap(),
            design_32_7().unwrap(),
        ] {
            assert_eq!(detect_symmetry(&d, 1e-8).label, "[3,4]+");
        }
        assert_eq!(
            detect_symmetry(&design_25_5(0.0).unwrap(), 1e-8).label,
            "[2,5]+"
        );
    }

    #[test]
    fn nine_design_polynomial_has_seed_roots_nearby() {
        let p = IntegerPolynomial::new(NINE_DESIGN_48_POLY.to_vec()).unwrap();
        let roots = positive_roots(&p).unwrap();
        for seed in [0.9334, 0.3535, 0.0620, 0.7068, 0.6397, 0.3018] {
            assert!(
                roots.iter().any(|r| close(*r, seed, 1e-4)),
                "{seed}: {roots:?}"
            );
        }
    }

    #[test]
    fn every_catalog_name_builds() {
        for e in CATALOG {
            let d = named(e.name).unwrap();
            assert_eq!(d.n(), e.n, "{}", e.name);
        }
        assert!(matches!(named("tesseract"), Err(Error::UnknownDesign(_))));
    }
}
