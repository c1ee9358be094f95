use std::f64::consts::TAU;

use nalgebra::{Matrix3, Vector3};

use super::{is_reflection, rotation_axis_angle, same_matrix, RotationGroup};
use crate::design::{Design, UnitPoint};

/// Symmetry group found for a point set.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryInfo {
    /// Catalog label, `"[1]+"` for asymmetric sets and `"∞"` for collinear ones.
    pub label: String,
    /// Group order; 0 stands for an infinite group.
    pub order: usize,
    pub elements: Vec<Matrix3<f64>>,
}

/// Largest catalog group (in the design's own frame) mapping the set onto itself.
pub fn detect_symmetry(design: &Design, tol: f64) -> SymmetryInfo {
    match symmetry_elements(design, tol) {
        None => SymmetryInfo {
            label: "∞".into(),
            order: 0,
            elements: Vec::new(),
        },
        Some(elements) => {
            let (label, order) = classify_elements(&elements);
            SymmetryInfo {
                label,
                order,
                elements,
            }
        }
    }
}

/// All orthogonal maps sending the point set to itself within `tol`, or `None`
/// when the points are collinear and the group is infinite.
///
/// A map is pinned down by the images of two independent points; candidates
/// are all image pairs with matching inner product, each tried with both
/// orientations.
pub fn symmetry_elements(design: &Design, tol: f64) -> Option<Vec<Matrix3<f64>>> {
    let pts = design.points();
    let a = pts[0];
    let b = *pts
        .iter()
        .max_by(|p, q| {
            let sp = p.as_vector().cross(a.as_vector()).norm();
            let sq = q.as_vector().cross(a.as_vector()).norm();
            sp.total_cmp(&sq)
        })
        .unwrap();
    if b.as_vector().cross(a.as_vector()).norm() < 1e-6 {
        return None;
    }
    let index = PointIndex::new(pts);
    let source = frame(&a, &b);
    let ab = a.dot(&b);
    let flip = Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0));
    let mut found: Vec<Matrix3<f64>> = Vec::new();
    for qa in pts {
        for qb in pts {
            if (qa.dot(qb) - ab).abs() > 4.0 * tol || qa.distance(qb) < 1e-12 {
                continue;
            }
            let target = frame(qa, qb);
            for m in [
                target * source.transpose(),
                target * flip * source.transpose(),
            ] {
                if found.iter().any(|f| same_matrix(f, &m)) {
                    continue;
                }
                if pts.iter().all(|p| index.contains(&p.transform(&m), tol)) {
                    found.push(m);
                }
            }
        }
    }
    Some(found)
}

fn frame(a: &UnitPoint, b: &UnitPoint) -> Matrix3<f64> {
    let e1 = *a.as_vector();
    let e2 = (b.as_vector() - e1 * e1.dot(b.as_vector())).normalize();
    let e3 = e1.cross(&e2);
    Matrix3::from_columns(&[e1, e2, e3])
}

struct PointIndex {
    sorted: Vec<UnitPoint>,
}

impl PointIndex {
    fn new(points: &[UnitPoint]) -> Self {
        let mut sorted = points.to_vec();
        sorted.sort_by(|p, q| p.z().total_cmp(&q.z()));
        PointIndex { sorted }
    }

    fn contains(&self, p: &UnitPoint, tol: f64) -> bool {
        let start = self.sorted.partition_point(|q| q.z() < p.z() - tol);
        self.sorted[start..]
            .iter()
            .take_while(|q| q.z() <= p.z() + tol)
            .any(|q| q.distance(p) <= tol)
    }
}

#[derive(Debug)]
enum RotationKind {
    Cyclic(usize),
    Dihedral(usize),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

fn rotation_kind(proper: &[Matrix3<f64>]) -> RotationKind {
    // axis -> largest order seen along it
    let mut axes: Vec<(Vector3<f64>, usize)> = Vec::new();
    for m in proper {
        if let Some((axis, angle)) = rotation_axis_angle(m) {
            let k = (TAU / angle).round() as usize;
            match axes
                .iter_mut()
                .find(|(a, _)| a.dot(&axis).abs() > 1.0 - 1e-8)
            {
                Some(entry) => entry.1 = entry.1.max(k),
                None => axes.push((axis, k)),
            }
        }
    }
    let count = |k: usize| axes.iter().filter(|(_, o)| *o == k).count();
    let max_order = axes.iter().map(|(_, o)| *o).max().unwrap_or(1);
    if count(5) > 1 {
        RotationKind::Icosahedral
    } else if count(4) > 1 {
        RotationKind::Octahedral
    } else if count(3) > 1 {
        RotationKind::Tetrahedral
    } else if proper.len() == 2 * max_order && max_order >= 2 {
        RotationKind::Dihedral(max_order)
    } else {
        RotationKind::Cyclic(max_order)
    }
}

/// Names a finite subgroup of O(3) from its elements.
pub fn classify_elements(elements: &[Matrix3<f64>]) -> (String, usize) {
    let order = elements.len();
    let proper: Vec<Matrix3<f64>> = elements
        .iter()
        .filter(|m| m.determinant() > 0.0)
        .copied()
        .collect();
    let inversion = elements
        .iter()
        .any(|m| same_matrix(m, &-Matrix3::identity()));
    let improper = proper.len() < order;
    let reflections = elements.iter().filter(|m| is_reflection(m)).count();
    let label = match rotation_kind(&proper) {
        RotationKind::Cyclic(n) if !improper => format!("[{n}]+"),
        RotationKind::Cyclic(n) if inversion => {
            if n % 2 == 0 {
                format!("[2,{n}+]")
            } else {
                format!("[2+,{}+]", 2 * n)
            }
        }
        RotationKind::Cyclic(n) => {
            if reflections == n {
                format!("[{n}]")
            } else if reflections == 1 {
                format!("[2,{n}+]")
            } else {
                format!("[2+,{}+]", 2 * n)
            }
        }
        RotationKind::Dihedral(n) if !improper => format!("[2,{n}]+"),
        RotationKind::Dihedral(n) => {
            let horizontal = if inversion {
                n % 2 == 0
            } else {
                reflections == n + 1
            };
            if horizontal {
                format!("[2,{n}]")
            } else {
                format!("[2+,{}]", 2 * n)
            }
        }
        RotationKind::Tetrahedral if !improper => "[3,3]+".into(),
        RotationKind::Tetrahedral if inversion => "[3+,4]".into(),
        RotationKind::Tetrahedral => "[3,3]".into(),
        RotationKind::Octahedral if !improper => "[3,4]+".into(),
        RotationKind::Octahedral => "[3,4]".into(),
        RotationKind::Icosahedral if !improper => "[3,5]+".into(),
        RotationKind::Icosahedral => "[3,5]".into(),
    };
    (label, order)
}

impl RotationGroup {
    /// Label derived from the group's elements; agrees with the catalog label up
    /// to equivalent spellings.
    pub fn structural_label(&self) -> String {
        classify_elements(self.elements()).0
    }
}
