//! Finite point groups in three dimensions, their orbits, and orbit-union
//! configurations.
//!
//! Groups are named in Coxeter bracket notation:
//!
//! | label        | order | group                        |
//! |--------------|-------|------------------------------|
//! | `[n]+`       | n     | cyclic rotations about z     |
//! | `[n]`        | 2n    | cyclic + n vertical mirrors  |
//! | `[2,n]+`     | 2n    | dihedral rotations           |
//! | `[2,n]`      | 4n    | dihedral + horizontal mirror |
//! | `[2,n+]`     | 2n    | cyclic + horizontal mirror   |
//! | `[2+,2n]`    | 4n    | antiprismatic                |
//! | `[2+,2n+]`   | 2n    | rotoreflection about z       |
//! | `[3,3]+`     | 12    | chiral tetrahedral           |
//! | `[3,3]`      | 24    | full tetrahedral             |
//! | `[3+,4]`     | 24    | pyritohedral                 |
//! | `[3,4]+`     | 24    | chiral octahedral            |
//! | `[3,4]`      | 48    | full octahedral              |
//! | `[3,5]+`     | 60    | chiral icosahedral           |
//! | `[3,5]`      | 120   | full icosahedral             |
//!
//! The principal axis of the axial families is z; the twofold axis of the
//! dihedral families is x. The polyhedral groups keep the coordinate axes as
//! twofold (or fourfold) axes, so `[3,4]+` is the set of even permutations with
//! an even number of sign changes together with the odd permutations with an odd
//! number of sign changes.

mod detect;

use std::fmt;

use nalgebra::{Matrix3, Vector3};

pub use detect::{classify_elements, detect_symmetry, symmetry_elements, SymmetryInfo};

use crate::design::{dedup_points, Design, DesignMeta, UnitPoint, COINCIDENCE_TOL};
use crate::error::{Error, Result};

/// Matrices closer than this in Frobenius norm are the same group element.
pub const MATRIX_TOL: f64 = 1e-9;

/// A finite subgroup of O(3).
#[derive(Debug, Clone, PartialEq)]
pub struct RotationGroup {
    label: String,
    elements: Vec<Matrix3<f64>>,
}

impl RotationGroup {
    /// Looks up a catalog label and generates the group to closure.
    pub fn from_label(label: &str) -> Result<Self> {
        let label: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        let (generators, expected) =
            catalog_generators(&label).ok_or_else(|| Error::UnknownGroup(label.clone()))?;
        Self::generate(label, &generators, expected)
    }

    /// Closes `generators` under multiplication, failing if the group grows past `expected`.
    pub fn generate(
        label: impl Into<String>,
        generators: &[Matrix3<f64>],
        expected: usize,
    ) -> Result<Self> {
        let label = label.into();
        let mut elements = vec![Matrix3::identity()];
        let mut next = 0;
        while next < elements.len() {
            let current = elements[next];
            next += 1;
            for g in generators {
                let candidate = g * current;
                if !elements.iter().any(|e| same_matrix(e, &candidate)) {
                    elements.push(candidate);
                    if elements.len() > expected {
                        return Err(Error::GroupClosure {
                            label,
                            expected,
                            reached: elements.len(),
                        });
                    }
                }
            }
        }
        if elements.len() != expected {
            return Err(Error::GroupClosure {
                label,
                expected,
                reached: elements.len(),
            });
        }
        Ok(RotationGroup { label, elements })
    }

    pub fn trivial() -> Self {
        RotationGroup {
            label: "[1]+".into(),
            elements: vec![Matrix3::identity()],
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix3<f64>] {
        &self.elements
    }

    /// True when every element is a proper rotation.
    pub fn is_proper(&self) -> bool {
        self.elements.iter().all(|m| m.determinant() > 0.0)
    }

    pub fn contains(&self, m: &Matrix3<f64>) -> bool {
        self.elements.iter().any(|e| same_matrix(e, m))
    }

    /// Elements fixing `p`.
    pub fn stabilizer(&self, p: &UnitPoint) -> Vec<Matrix3<f64>> {
        self.elements
            .iter()
            .filter(|g| p.transform(g).distance(p) < COINCIDENCE_TOL)
            .copied()
            .collect()
    }

    /// Unit axes of all non-trivial proper rotations, one per line (sign arbitrary).
    pub fn rotation_axes(&self) -> Vec<Vector3<f64>> {
        let mut axes: Vec<Vector3<f64>> = Vec::new();
        for g in &self.elements {
            if let Some((axis, _)) = rotation_axis_angle(g) {
                if !axes.iter().any(|a| a.dot(&axis).abs() > 1.0 - 1e-9) {
                    axes.push(axis);
                }
            }
        }
        axes
    }

    /// Unit normals of all mirror planes.
    pub fn mirror_normals(&self) -> Vec<Vector3<f64>> {
        let mut normals: Vec<Vector3<f64>> = Vec::new();
        for g in &self.elements {
            if is_reflection(g) {
                let n = reflection_normal(g);
                if !normals.iter().any(|a| a.dot(&n).abs() > 1.0 - 1e-9) {
                    normals.push(n);
                }
            }
        }
        normals
    }
}

impl fmt::Display for RotationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.label, self.order())
    }
}

/// Labels with fixed parameters that the catalog understands; `[n]`-style
/// families accept any `n >= 1`.
pub const CATALOG_LABELS: &[&str] = &[
    "[1]+", "[2]", "[2]+", "[2,2]+", "[2+,2+]", "[3]", "[3]+", "[4]", "[4]+", "[5]+", "[6]+",
    "[2,3]", "[2,3]+", "[2,3+]", "[2,4]+", "[2,5]", "[2,5]+", "[2,6]+", "[2,7]+", "[2+,4]",
    "[2+,6]", "[2+,10]", "[2+,10+]", "[3,3]", "[3,3]+", "[3,4]", "[3,4]+", "[3+,4]", "[3,5]",
    "[3,5]+",
];

pub(crate) fn same_matrix(a: &Matrix3<f64>, b: &Matrix3<f64>) -> bool {
    (a - b).norm() < MATRIX_TOL
}

fn rot_z(angle: f64) -> Matrix3<f64> {
    let (s, c) = angle.sin_cos();
    Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

fn rotation_about(axis: Vector3<f64>, angle: f64) -> Matrix3<f64> {
    let a = axis.normalize();
    let (s, c) = angle.sin_cos();
    let k = Matrix3::new(0.0, -a.z, a.y, a.z, 0.0, -a.x, -a.y, a.x, 0.0);
    Matrix3::identity() + k * s + k * k * (1.0 - c)
}

fn half_turn_x() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, -1.0))
}

fn mirror_z() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0))
}

fn mirror_y() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, 1.0))
}

/// (x, y, z) -> (y, z, x)
fn cycle_xyz() -> Matrix3<f64> {
    Matrix3::new(0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0)
}

/// (x, y, z) -> (y, x, -z)
fn swap_negate() -> Matrix3<f64> {
    Matrix3::new(0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, -1.0)
}

/// (x, y, z) -> (y, x, z)
fn swap_xy() -> Matrix3<f64> {
    Matrix3::new(0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0)
}

fn five_fold() -> Matrix3<f64> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    rotation_about(Vector3::new(0.0, 1.0, phi), std::f64::consts::TAU / 5.0)
}

fn parse_n(s: &str) -> Option<usize> {
    s.parse::<usize>().ok().filter(|&n| n >= 1)
}

fn catalog_generators(label: &str) -> Option<(Vec<Matrix3<f64>>, usize)> {
    use std::f64::consts::{PI, TAU};
    let tetra = vec![cycle_xyz(), half_turn_x()];
    let fixed = match label {
        "[3,3]+" => Some((tetra.clone(), 12)),
        "[3,3]" => Some(([tetra.clone(), vec![swap_xy()]].concat(), 24)),
        "[3+,4]" => Some(([tetra.clone(), vec![-Matrix3::identity()]].concat(), 24)),
        "[3,4]+" => Some(([tetra.clone(), vec![swap_negate()]].concat(), 24)),
        "[3,4]" => Some((
            [tetra.clone(), vec![swap_negate(), -Matrix3::identity()]].concat(),
            48,
        )),
        "[3,5]+" => Some(([tetra.clone(), vec![five_fold()]].concat(), 60)),
        "[3,5]" => Some((
            [tetra, vec![five_fold(), -Matrix3::identity()]].concat(),
            120,
        )),
        _ => None,
    };
    if fixed.is_some() {
        return fixed;
    }
    let inner = label.strip_prefix('[')?;
    let (inner, plus) = match inner.strip_suffix("]+") {
        Some(rest) => (rest, true),
        None => (inner.strip_suffix(']')?, false),
    };
    match inner.split_once(',') {
        None => {
            let n = parse_n(inner)?;
            if plus {
                Some((vec![rot_z(TAU / n as f64)], n))
            } else {
                Some((vec![rot_z(TAU / n as f64), mirror_y()], 2 * n))
            }
        }
        Some((first, second)) => match (first, plus) {
            ("2", true) => {
                let n = parse_n(second)?;
                Some((vec![rot_z(TAU / n as f64), half_turn_x()], 2 * n))
            }
            ("2", false) => {
                if let Some(n) = second.strip_suffix('+').and_then(parse_n) {
                    Some((vec![rot_z(TAU / n as f64), mirror_z()], 2 * n))
                } else {
                    let n = parse_n(second)?;
                    Some((
                        vec![rot_z(TAU / n as f64), half_turn_x(), mirror_z()],
                        4 * n,
                    ))
                }
            }
            ("2+", false) => {
                if let Some(m) = second.strip_suffix('+').and_then(parse_n) {
                    if m % 2 != 0 {
                        return None;
                    }
                    Some((vec![rot_z(PI / (m / 2) as f64) * mirror_z()], m))
                } else {
                    let m = parse_n(second)?;
                    if m % 2 != 0 {
                        return None;
                    }
                    let n = m / 2;
                    Some((
                        vec![rot_z(PI / n as f64) * mirror_z(), half_turn_x()],
                        4 * n,
                    ))
                }
            }
            _ => None,
        },
    }
}

/// Axis and angle in `(0, π]` of a proper non-identity rotation.
pub(crate) fn rotation_axis_angle(m: &Matrix3<f64>) -> Option<(Vector3<f64>, f64)> {
    if m.determinant() < 0.0 {
        return None;
    }
    let cos = ((m.trace() - 1.0) / 2.0).clamp(-1.0, 1.0);
    let angle = cos.acos();
    if angle < 1e-6 {
        return None;
    }
    let skew = Vector3::new(
        m[(2, 1)] - m[(1, 2)],
        m[(0, 2)] - m[(2, 0)],
        m[(1, 0)] - m[(0, 1)],
    );
    let axis = if skew.norm() > 1e-6 {
        skew.normalize()
    } else {
        // half turn: (M + I) / 2 = a aᵀ
        let sym = (m + Matrix3::identity()) / 2.0;
        let col = (0..3)
            .map(|j| sym.column(j).into_owned())
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .unwrap();
        col.normalize()
    };
    Some((axis, angle))
}

pub(crate) fn is_reflection(m: &Matrix3<f64>) -> bool {
    m.determinant() < 0.0 && (m.trace() - 1.0).abs() < 1e-9
}

pub(crate) fn reflection_normal(m: &Matrix3<f64>) -> Vector3<f64> {
    // (I - M) / 2 = n nᵀ
    let proj = (Matrix3::identity() - m) / 2.0;
    (0..3)
        .map(|j| proj.column(j).into_owned())
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap()
        .normalize()
}

/// Images of `rep` under every group element, without duplicates. The
/// representative itself comes first.
pub fn orbit(group: &RotationGroup, rep: &UnitPoint) -> Vec<UnitPoint> {
    dedup_points(group.elements().iter().map(|g| rep.transform(g)))
}

/// A union of orbits of one group, given by one representative per orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitConfig {
    pub group: RotationGroup,
    pub representatives: Vec<UnitPoint>,
    orbit_sizes: Vec<usize>,
}

impl OrbitConfig {
    pub fn new(group: RotationGroup, representatives: Vec<UnitPoint>) -> Self {
        let orbit_sizes = representatives
            .iter()
            .map(|r| orbit(&group, r).len())
            .collect();
        OrbitConfig {
            group,
            representatives,
            orbit_sizes,
        }
    }

    pub fn orbit_sizes(&self) -> &[usize] {
        &self.orbit_sizes
    }

    pub fn total_points(&self) -> usize {
        self.orbit_sizes.iter().sum()
    }
}

/// Expands every orbit and concatenates them.
pub fn config_to_design(cfg: &OrbitConfig) -> Result<Design> {
    let orbits: Vec<Vec<UnitPoint>> = cfg
        .representatives
        .iter()
        .map(|r| orbit(&cfg.group, r))
        .collect();
    for (j, later) in orbits.iter().enumerate() {
        for (i, earlier) in orbits[..j].iter().enumerate() {
            let hit = later
                .iter()
                .any(|p| earlier.iter().any(|q| q.distance(p) < COINCIDENCE_TOL));
            if hit {
                return Err(Error::OrbitCollision {
                    first: i,
                    second: j,
                });
            }
        }
    }
    let design = Design::new(orbits.into_iter().flatten().collect())?;
    Ok(design.with_meta(DesignMeta {
        group_label: Some(cfg.group.label().to_string()),
        ..DesignMeta::default()
    }))
}

/// `(theta, phi)` for each representative, concatenated.
pub fn parametrize(cfg: &OrbitConfig) -> Vec<f64> {
    cfg.representatives
        .iter()
        .flat_map(|r| {
            let (theta, phi) = r.to_angles();
            [theta, phi]
        })
        .collect()
}

pub fn unparametrize(group: &RotationGroup, params: &[f64]) -> Result<OrbitConfig> {
    if !params.len().is_multiple_of(2) {
        return Err(Error::OddParameterCount(params.len()));
    }
    let reps = params
        .chunks_exact(2)
        .map(|c| UnitPoint::from_angles(c[0], c[1]))
        .collect();
    Ok(OrbitConfig::new(group.clone(), reps))
}
