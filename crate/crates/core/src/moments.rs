//! Sphere moments of monomials and the residual functionals built on them.
//!
//! For a point set `P` and a monomial `f = x^a y^b z^c`, the residual is
//! `mean_i f(P_i) - ∫ f dμ` with `μ` the normalized surface measure. A set is a
//! spherical t-design exactly when every residual of degree `1..=t` vanishes.

use std::collections::BTreeMap;

use crate::design::{Design, UnitPoint};

/// `x^e[0] y^e[1] z^e[2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exponents: [u32; 3],
}

impl Monomial {
    pub const fn new(e1: u32, e2: u32, e3: u32) -> Self {
        Monomial {
            exponents: [e1, e2, e3],
        }
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }

    /// `d! / (e1! e2! e3!)`.
    pub fn multinomial(&self) -> f64 {
        // product of binomials avoids overflowing intermediate factorials
        let [a, b, c] = self.exponents.map(|e| e as u64);
        binomial(a + b + c, a) * binomial(b + c, b)
    }

    pub fn eval(&self, p: &UnitPoint) -> f64 {
        let [a, b, c] = self.exponents;
        p.x().powi(a as i32) * p.y().powi(b as i32) * p.z().powi(c as i32)
    }
}

fn binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// All `binomial(d+2, 2)` monomials of total degree `d`, in a fixed order.
pub fn monomials(degree: usize) -> Vec<Monomial> {
    let d = degree as u32;
    let mut out = Vec::with_capacity((degree + 1) * (degree + 2) / 2);
    for e1 in (0..=d).rev() {
        for e2 in (0..=d - e1).rev() {
            out.push(Monomial::new(e1, e2, d - e1 - e2));
        }
    }
    out
}

/// `∫ f dμ` over the unit sphere with total measure 1.
///
/// Zero when any exponent is odd, otherwise `Π (e_i - 1)!! / (d + 1)!!`.
pub fn sphere_moment(m: Monomial) -> f64 {
    if m.exponents.iter().any(|e| e % 2 == 1) {
        return 0.0;
    }
    let mut numer: Vec<u32> = Vec::new();
    for &e in &m.exponents {
        numer.extend((1..e).step_by(2));
    }
    let denom: Vec<u32> = (1..=m.degree() as u32 + 1).step_by(2).collect();
    // denominator has more factors than the numerator; interleave to stay in range
    let mut acc = 1.0;
    for (i, &q) in denom.iter().enumerate() {
        if let Some(&p) = numer.get(i) {
            acc *= p as f64;
        }
        acc /= q as f64;
    }
    acc
}

/// Precomputed monomial layout for a fixed list of degrees.
///
/// Evaluating a point set walks each point once, filling power tables up to the
/// largest degree, so a full sweep costs `O(N · Σ |F_d|)`.
#[derive(Debug, Clone)]
pub struct MomentLayout {
    degrees: Vec<usize>,
    monomials: Vec<Monomial>,
    offsets: Vec<usize>,
    targets: Vec<f64>,
    max_degree: usize,
}

impl MomentLayout {
    pub fn new(degrees: impl IntoIterator<Item = usize>) -> Self {
        let degrees: Vec<usize> = degrees.into_iter().collect();
        let mut monos = Vec::new();
        let mut offsets = Vec::with_capacity(degrees.len() + 1);
        for &d in &degrees {
            offsets.push(monos.len());
            monos.extend(monomials(d));
        }
        offsets.push(monos.len());
        let targets = monos.iter().map(|&m| sphere_moment(m)).collect();
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        MomentLayout {
            degrees,
            monomials: monos,
            offsets,
            targets,
            max_degree,
        }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn monomials_of(&self, slot: usize) -> &[Monomial] {
        &self.monomials[self.offsets[slot]..self.offsets[slot + 1]]
    }

    /// Residual of every monomial, flattened in layout order.
    pub fn residuals(&self, points: &[UnitPoint]) -> Vec<f64> {
        let mut sums = vec![0.0; self.monomials.len()];
        if points.is_empty() {
            return sums;
        }
        self.pairwise_sums(points, &mut sums);
        let inv_n = 1.0 / points.len() as f64;
        for (s, &target) in sums.iter_mut().zip(&self.targets) {
            *s = *s * inv_n - target;
        }
        sums
    }

    fn pairwise_sums(&self, points: &[UnitPoint], out: &mut [f64]) {
        const LEAF: usize = 16;
        if points.len() <= LEAF {
            let mut px = vec![1.0; self.max_degree + 1];
            let mut py = vec![1.0; self.max_degree + 1];
            let mut pz = vec![1.0; self.max_degree + 1];
            for p in points {
                for k in 1..=self.max_degree {
                    px[k] = px[k - 1] * p.x();
                    py[k] = py[k - 1] * p.y();
                    pz[k] = pz[k - 1] * p.z();
                }
                for (acc, m) in out.iter_mut().zip(&self.monomials) {
                    let [a, b, c] = m.exponents;
                    *acc += px[a as usize] * py[b as usize] * pz[c as usize];
                }
            }
            return;
        }
        let mid = points.len() / 2;
        let mut right = vec![0.0; out.len()];
        self.pairwise_sums(&points[..mid], out);
        self.pairwise_sums(&points[mid..], &mut right);
        for (l, r) in out.iter_mut().zip(right) {
            *l += r;
        }
    }
}

/// `mean f(P_i) - ∫ f dμ` for one monomial.
pub fn monomial_residual(design: &Design, m: Monomial) -> f64 {
    let n = design.n() as f64;
    let sum: f64 = design.points().iter().map(|p| m.eval(p)).sum();
    sum / n - sphere_moment(m)
}

/// Rotation-invariant search objective for strength `t`.
///
/// Sums multinomially weighted squared residuals over the monomials of degrees
/// `t - 1` and `t`; vanishes exactly on t-designs.
#[derive(Debug, Clone)]
pub struct Criterion {
    t: usize,
    layout: MomentLayout,
    weights: Vec<f64>,
}

impl Criterion {
    pub fn new(t: usize) -> Self {
        assert!(t >= 1, "criterion needs t >= 1");
        let layout = MomentLayout::new([t - 1, t]);
        let weights = layout.monomials.iter().map(|m| m.multinomial()).collect();
        Criterion { t, layout, weights }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn eval(&self, points: &[UnitPoint]) -> f64 {
        self.layout
            .residuals(points)
            .iter()
            .zip(&self.weights)
            .map(|(r, w)| w * r * r)
            .sum()
    }
}

pub fn criterion(design: &Design, t: usize) -> f64 {
    Criterion::new(t).eval(design.points())
}

/// Unweighted sum of squared residuals over every monomial of degree `1..=t`.
pub fn discrepancy(design: &Design, t: usize) -> f64 {
    discrepancy_of_points(design.points(), t)
}

pub(crate) fn discrepancy_of_points(points: &[UnitPoint], t: usize) -> f64 {
    MomentLayout::new(1..=t)
        .residuals(points)
        .iter()
        .map(|r| r * r)
        .sum()
}

/// Residuals of one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeResiduals {
    pub degree: usize,
    pub residuals: Vec<(Monomial, f64)>,
    pub sum_sq: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub per_degree_residual_sumsq: BTreeMap<usize, f64>,
    pub table: Vec<DegreeResiduals>,
    /// Weighted objective at strength `max(verified_t, 1)`.
    pub criterion: f64,
    /// Discrepancy at strength `max(verified_t, 1)`.
    pub discrepancy: f64,
    /// Largest `t <= max_t` whose degrees `1..=t` all have residual sum of squares `<= tolerance`.
    pub verified_t: usize,
    pub max_t: usize,
    pub tolerance: f64,
}

impl MomentReport {
    pub fn degree_sumsq(&self, degree: usize) -> Option<f64> {
        self.per_degree_residual_sumsq.get(&degree).copied()
    }

    /// Largest single monomial residual at `degree`.
    pub fn max_abs_residual(&self, degree: usize) -> Option<f64> {
        self.table
            .iter()
            .find(|row| row.degree == degree)
            .map(|row| {
                row.residuals
                    .iter()
                    .map(|(_, r)| r.abs())
                    .fold(0.0, f64::max)
            })
    }
}

/// Checks the moment conditions degree by degree up to `max_t`.
pub fn verified_strength(design: &Design, max_t: usize, tol: f64) -> MomentReport {
    assert!(max_t >= 1, "max_t must be at least 1");
    let layout = MomentLayout::new(1..=max_t);
    let residuals = layout.residuals(design.points());
    let mut table = Vec::with_capacity(max_t);
    let mut per_degree = BTreeMap::new();
    for (slot, &d) in layout.degrees().iter().enumerate() {
        let range = layout.offsets[slot]..layout.offsets[slot + 1];
        let monos = &layout.monomials[range.clone()];
        let rs = &residuals[range];
        let sum_sq = rs.iter().map(|r| r * r).sum();
        per_degree.insert(d, sum_sq);
        table.push(DegreeResiduals {
            degree: d,
            residuals: monos.iter().copied().zip(rs.iter().copied()).collect(),
            sum_sq,
        });
    }
    let verified_t = per_degree
        .iter()
        .find(|(_, &s)| s.is_nan() || s > tol)
        .map_or(max_t, |(&d, _)| d - 1);
    let at = verified_t.max(1);
    let discrepancy = per_degree.range(1..=at).map(|(_, s)| s).sum::<f64>();
    MomentReport {
        per_degree_residual_sumsq: per_degree,
        table,
        criterion: Criterion::new(at).eval(design.points()),
        discrepancy,
        verified_t,
        max_t,
        tolerance: tol,
    }
}
