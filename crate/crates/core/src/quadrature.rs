//! Equal-weight quadrature on [-1, 1], the latitude-times-polygon product that
//! lifts it to the sphere, unions of designs, and the lower bound on design size.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector, Quaternion, UnitQuaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::design::{first_coincidence, Design, DesignMeta, UnitPoint};
use crate::error::{Error, Result};

/// Smallest `n` for which an `n`-point interval t-design exists, indexed by `t`.
pub const INTERVAL_MIN_POINTS: [usize; 12] = [1, 1, 2, 2, 4, 4, 6, 6, 9, 9, 13, 13];

/// Largest per-equation residual accepted from the interval solver.
pub const INTERVAL_TOL: f64 = 1e-13;

const INTERVAL_RESTARTS: usize = 200;
const INTERVAL_SEED: u64 = 0x1d_e519;

/// `n` distinct reals in [-1, 1] whose equal-weight average integrates every
/// polynomial of degree at most `t` exactly against the uniform measure.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalDesign {
    points: Vec<f64>,
    t: usize,
}

impl IntervalDesign {
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// `(1/n) Σ pᵏ - ∫ xᵏ dx / 2` for `k = 1..=t`.
    pub fn moment_residuals(&self) -> Vec<f64> {
        interval_residuals(&self.points, self.t)
    }

    pub fn max_residual(&self) -> f64 {
        self.moment_residuals()
            .into_iter()
            .fold(0.0, |m, r| m.max(r.abs()))
    }
}

fn interval_residuals(points: &[f64], t: usize) -> Vec<f64> {
    let n = points.len() as f64;
    (1..=t)
        .map(|k| {
            let mean = points.iter().map(|p| p.powi(k as i32)).sum::<f64>() / n;
            let exact = if k % 2 == 0 {
                1.0 / (k as f64 + 1.0)
            } else {
                0.0
            };
            mean - exact
        })
        .collect()
}

/// Solves for an `n`-point interval t-design symmetric under `p ↦ -p`.
///
/// Odd moments vanish by symmetry. The even ones become power-sum equations in
/// the squares `y = p²`, which are solved by damped Gauss–Newton from seeded
/// random starts until a solution with distinct interior points appears.
pub fn interval_design(n: usize, t: usize) -> Result<IntervalDesign> {
    let min = *INTERVAL_MIN_POINTS
        .get(t)
        .ok_or(Error::StrengthOutOfRange(t))?;
    if n < min {
        return Err(Error::BelowMinimumSize { n, t, min });
    }
    if t <= 1 {
        let points = (0..n)
            .map(|i| -1.0 + (2 * i + 1) as f64 / n as f64)
            .collect();
        return Ok(IntervalDesign { points, t });
    }
    let pairs = n / 2;
    let equations = t / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(INTERVAL_SEED ^ ((n as u64) << 8) ^ t as u64);
    let mut best_residual = f64::INFINITY;
    for _ in 0..INTERVAL_RESTARTS {
        let start: Vec<f64> = (0..pairs).map(|_| rng.random_range(0.1..1.5)).collect();
        let angles = levenberg_marquardt(start, n, equations);
        let mut points: Vec<f64> = angles.iter().map(|u| u.sin().abs()).collect();
        points.extend(points.clone().into_iter().map(|p| -p));
        if n % 2 == 1 {
            points.push(0.0);
        }
        points.sort_by(f64::total_cmp);
        let residual = interval_residuals(&points, t)
            .into_iter()
            .fold(0.0_f64, |m, r| m.max(r.abs()));
        best_residual = best_residual.min(residual);
        let separated = points.windows(2).all(|w| w[1] - w[0] > 1e-6)
            && points.iter().all(|p| p.abs() < 1.0 - 1e-9);
        if residual <= INTERVAL_TOL && separated {
            return Ok(IntervalDesign { points, t });
        }
    }
    Err(Error::IntervalNoConvergence { best_residual })
}

/// Minimizes `Σ_j ((2/n) Σ_i sin²ʲ uᵢ - 1/(2j+1))²` over the angles `u`.
fn levenberg_marquardt(mut u: Vec<f64>, n: usize, equations: usize) -> Vec<f64> {
    let scale = 2.0 / n as f64;
    let residual = |u: &[f64]| -> DVector<f64> {
        DVector::from_fn(equations, |j, _| {
            let j = j + 1;
            scale * u.iter().map(|x| x.sin().powi(2 * j as i32)).sum::<f64>()
                - 1.0 / (2 * j + 1) as f64
        })
    };
    let mut lambda = 1e-3;
    let mut r = residual(&u);
    for _ in 0..500 {
        let cost = r.norm_squared();
        if cost < 1e-32 {
            break;
        }
        let jac = DMatrix::from_fn(equations, u.len(), |j, i| {
            let j = j + 1;
            let (s, c) = u[i].sin_cos();
            scale * 2.0 * j as f64 * s.powi(2 * j as i32 - 1) * c
        });
        let jt = jac.transpose();
        let normal = &jt * &jac;
        let grad = &jt * &r;
        let mut improved = false;
        for _ in 0..30 {
            let mut damped = normal.clone();
            for k in 0..u.len() {
                damped[(k, k)] += lambda * (1.0 + normal[(k, k)]);
            }
            let Some(step) = damped.lu().solve(&(-&grad)) else {
                lambda *= 10.0;
                continue;
            };
            let trial: Vec<f64> = u.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let tr = residual(&trial);
            if tr.norm_squared() < cost {
                u = trial;
                r = tr;
                lambda = (lambda * 0.3).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    u
}

/// Regular `m`-gons at every latitude of an interval design.
///
/// The result is a spherical design of the interval design's strength as long
/// as `m > t`.
pub fn bajnok_product(iv: &IntervalDesign, m: usize) -> Result<Design> {
    if m <= iv.t {
        return Err(Error::PolygonTooSmall { m, t: iv.t });
    }
    let mut points = Vec::with_capacity(iv.n() * m);
    for &z in &iv.points {
        let r = (1.0 - z * z).max(0.0).sqrt();
        for j in 0..m {
            let a = TAU * j as f64 / m as f64;
            points.push(UnitPoint::new(r * a.cos(), r * a.sin(), z)?);
        }
    }
    Ok(Design::new(points)?.with_meta(DesignMeta {
        target_t: Some(iv.t),
        source: Some(format!(
            "product of {}-point interval design and {m}-gons",
            iv.n()
        )),
        ..DesignMeta::default()
    }))
}

const UNION_ATTEMPTS: usize = 32;
const UNION_SEED: u64 = 0x5eed_0f0b;

/// Uniformly random rotation from a normalized Gaussian quaternion.
pub fn random_rotation(rng: &mut impl Rng) -> nalgebra::Matrix3<f64> {
    let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    UnitQuaternion::from_quaternion(Quaternion::new(q[0], q[1], q[2], q[3]))
        .to_rotation_matrix()
        .into_inner()
}

/// Concatenates two designs. If points collide, `b` is rotated by seeded
/// random rotations until they do not.
pub fn union(a: &Design, b: &Design) -> Result<Design> {
    let mut rng = ChaCha8Rng::seed_from_u64(UNION_SEED);
    let mut moved = b.clone();
    for _ in 0..=UNION_ATTEMPTS {
        let points: Vec<UnitPoint> = a.points().iter().chain(moved.points()).copied().collect();
        if first_coincidence(&points).is_none() {
            let target_t = a.meta.target_t.zip(b.meta.target_t).map(|(x, y)| x.min(y));
            return Ok(Design::new(points)?.with_meta(DesignMeta {
                target_t,
                source: Some(format!("union of {} and {} points", a.n(), b.n())),
                ..DesignMeta::default()
            }));
        }
        moved = b.transformed(&random_rotation(&mut rng));
    }
    Err(Error::UnionCollision(UNION_ATTEMPTS))
}

/// Union of any number of designs; a single design comes back unchanged.
pub fn union_many(designs: &[Design]) -> Result<Design> {
    let (first, rest) = designs.split_first().ok_or(Error::EmptyDesign)?;
    rest.iter().try_fold(first.clone(), |acc, d| union(&acc, d))
}

/// Fewest points a spherical t-design on S² can have.
pub fn lower_bound(t: usize) -> usize {
    if t == 0 {
        return 1;
    }
    let base = if t % 2 == 1 {
        ((t + 1) * (t + 3)).div_ceil(4)
    } else {
        ((t + 2) * (t + 2)).div_ceil(4)
    };
    if matches!(t, 1 | 2 | 3 | 5) {
        base
    } else {
        base + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::verified_strength;

    #[test]
    fn two_point_three_design() {
        let iv = interval_design(2, 3).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((iv.points()[0] + x).abs() < 1e-14 && (iv.points()[1] - x).abs() < 1e-14);
    }

    #[test]
    fn single_point() {
        assert_eq!(interval_design(1, 1).unwrap().points(), &[0.0]);
    }

    #[test]
    fn four_point_five_design_matches_quadratic() {
        // squares satisfy a² + b² = 2/3 and a⁴ + b⁴ = 2/5
        let iv = interval_design(4, 5).unwrap();
        let p = iv.points();
        let (a2, b2) = (p[3] * p[3], p[2] * p[2]);
        assert!((a2 + b2 - 2.0 / 3.0).abs() < 1e-13);
        assert!((a2 * a2 + b2 * b2 - 2.0 / 5.0).abs() < 1e-13);
        // the same squares from the quadratic formula
        let s: f64 = 2.0 / 3.0;
        let prod = (s * s - 2.0 / 5.0) / 2.0;
        let disc = (s * s - 4.0 * prod).sqrt();
        assert!((a2 - (s + disc) / 2.0).abs() < 1e-12);
        assert!((b2 - (s - disc) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn whole_existence_table_solves() {
        for (t, &min) in INTERVAL_MIN_POINTS.iter().enumerate() {
            for n in min..=min + 4 {
                let iv = interval_design(n, t).unwrap_or_else(|e| panic!("n={n} t={t}: {e}"));
                assert_eq!(iv.n(), n);
                assert!(iv.max_residual() <= INTERVAL_TOL);
                let mut neg: Vec<f64> = iv.points().iter().map(|p| -p).collect();
                neg.sort_by(f64::total_cmp);
                for (a, b) in neg.iter().zip(iv.points()) {
                    assert!((a - b).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_table_requests() {
        assert_eq!(
            interval_design(8, 8),
            Err(Error::BelowMinimumSize { n: 8, t: 8, min: 9 })
        );
        assert_eq!(interval_design(40, 12), Err(Error::StrengthOutOfRange(12)));
    }

    #[test]
    fn products_verify() {
        let d = bajnok_product(&interval_design(6, 6).unwrap(), 7).unwrap();
        assert_eq!(d.n(), 42);
        assert!(verified_strength(&d, 6, 1e-20).verified_t >= 6);
        let d = bajnok_product(&interval_design(2, 3).unwrap(), 4).unwrap();
        assert_eq!(d.n(), 8);
        assert_eq!(verified_strength(&d, 4, 1e-20).verified_t, 3);
        let d = bajnok_product(&interval_design(1, 1).unwrap(), 2).unwrap();
        assert_eq!(d.n(), 2);
        assert_eq!(verified_strength(&d, 2, 1e-20).verified_t, 1);
        assert_eq!(
            bajnok_product(&interval_design(2, 3).unwrap(), 3),
            Err(Error::PolygonTooSmall { m: 3, t: 3 })
        );
    }

    #[test]
    fn union_rotates_on_collision() {
        let ico = crate::construct::named("icosahedron").unwrap();
        let both = union(&ico, &ico).unwrap();
        assert_eq!(both.n(), 24);
        assert_eq!(verified_strength(&both, 6, 1e-20).verified_t, 5);
        assert_eq!(union_many(std::slice::from_ref(&ico)).unwrap(), ico);
        assert_eq!(union_many(&[]), Err(Error::EmptyDesign));
    }

    #[test]
    fn lower_bounds() {
        let got: Vec<usize> = (0..=13).map(lower_bound).collect();
        assert_eq!(
            got,
            vec![1, 2, 4, 6, 10, 12, 17, 21, 26, 31, 37, 43, 50, 57]
        );
        for t in 10..=100 {
            let ratio = lower_bound(t) as f64 / (t * t) as f64 * 4.0;
            assert!((1.0..=1.6).contains(&ratio));
        }
    }
}
