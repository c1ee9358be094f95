//! Points on the unit sphere and finite point sets built from them.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};

/// Two points closer than this are treated as the same point.
pub const COINCIDENCE_TOL: f64 = 1e-9;

/// A point on the unit sphere S².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitPoint(Vector3<f64>);

impl UnitPoint {
    /// Normalizes `(x, y, z)` onto the sphere.
    ///
    /// Vectors already within a few ulps of unit length are kept bit-for-bit, so
    /// normalizing twice is the identity.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_vector(Vector3::new(x, y, z))
    }

    pub fn from_vector(v: Vector3<f64>) -> Result<Self> {
        let norm = v.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::DegeneratePoint);
        }
        if (norm - 1.0).abs() <= 4.0 * f64::EPSILON {
            Ok(UnitPoint(v))
        } else {
            Ok(UnitPoint(v / norm))
        }
    }

    /// Point with polar angle `theta` from +z and azimuth `phi` from +x.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        UnitPoint(Vector3::new(st * cp, st * sp, ct))
    }

    /// `(theta, phi)` with `theta` in [0, π] and `phi` in [0, 2π). Poles map to `phi = 0`.
    pub fn to_angles(&self) -> (f64, f64) {
        let v = &self.0;
        let rho = v.x.hypot(v.y);
        let theta = rho.atan2(v.z);
        if rho == 0.0 {
            return (theta, 0.0);
        }
        let mut phi = v.y.atan2(v.x);
        if phi < 0.0 {
            phi += std::f64::consts::TAU;
        }
        if phi >= std::f64::consts::TAU {
            phi = 0.0;
        }
        (theta, phi)
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn z(&self) -> f64 {
        self.0.z
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.0.x, self.0.y, self.0.z]
    }

    pub fn as_vector(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn dot(&self, other: &UnitPoint) -> f64 {
        self.0.dot(&other.0)
    }

    pub fn distance(&self, other: &UnitPoint) -> f64 {
        (self.0 - other.0).norm()
    }

    /// Image under an orthogonal matrix.
    pub fn transform(&self, m: &Matrix3<f64>) -> UnitPoint {
        UnitPoint(m * self.0)
    }
}

/// Optional bookkeeping carried along with a design.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DesignMeta {
    pub target_t: Option<usize>,
    pub group_label: Option<String>,
    pub source: Option<String>,
    /// Coordinates are low-precision published values that need polishing
    /// before they verify at working precision.
    pub requires_polish: bool,
}

/// A finite set of distinct points on the sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    points: Vec<UnitPoint>,
    pub meta: DesignMeta,
}

impl Design {
    /// Builds a design, rejecting empty sets and coincident points.
    pub fn new(points: Vec<UnitPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyDesign);
        }
        if let Some((first, second, distance)) = first_coincidence(&points) {
            return Err(Error::DuplicatePoint {
                first,
                second,
                distance,
            });
        }
        Ok(Design {
            points,
            meta: DesignMeta::default(),
        })
    }

    pub fn from_coords(coords: &[[f64; 3]]) -> Result<Self> {
        let points = coords
            .iter()
            .map(|c| UnitPoint::new(c[0], c[1], c[2]))
            .collect::<Result<Vec<_>>>()?;
        Design::new(points)
    }

    pub fn with_meta(mut self, meta: DesignMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.meta.source = Some(source.into());
        self
    }

    pub fn points(&self) -> &[UnitPoint] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn into_points(self) -> Vec<UnitPoint> {
        self.points
    }

    /// Applies an orthogonal transformation to every point.
    pub fn transformed(&self, m: &Matrix3<f64>) -> Design {
        Design {
            points: self.points.iter().map(|p| p.transform(m)).collect(),
            meta: self.meta.clone(),
        }
    }

    /// Sorted multiset of pairwise inner products; a rotation-invariant fingerprint.
    pub fn inner_product_profile(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n() * (self.n().saturating_sub(1)) / 2);
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                out.push(p.dot(q));
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }
}

/// Returns the first pair of points closer than [`COINCIDENCE_TOL`].
pub(crate) fn first_coincidence(points: &[UnitPoint]) -> Option<(usize, usize, f64)> {
    // sort by z so only a narrow window needs pairwise checks
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].z().total_cmp(&points[b].z()));
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if points[j].z() - points[i].z() > COINCIDENCE_TOL {
                break;
            }
            let d = points[i].distance(&points[j]);
            if d < COINCIDENCE_TOL {
                return Some((i.min(j), i.max(j), d));
            }
        }
    }
    None
}

/// Drops points that coincide with an earlier one.
pub(crate) fn dedup_points(points: impl IntoIterator<Item = UnitPoint>) -> Vec<UnitPoint> {
    let mut out: Vec<UnitPoint> = Vec::new();
    for p in points {
        if !out.iter().any(|q| q.distance(&p) < COINCIDENCE_TOL) {
            out.push(p);
        }
    }
    out
}
