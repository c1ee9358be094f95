//! Integer polynomials and real root isolation.
//!
//! Roots are isolated exactly with a Sturm sequence over the rationals, then
//! refined in floating point by bisection and a Newton polish whose residuals
//! are evaluated with compensated (double-double) Horner.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Univariate polynomial with exact integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerPolynomial {
    coeffs: Vec<i64>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Result<Self> {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(IntegerPolynomial { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `p(x)` by compensated Horner; accurate to about twice working precision.
    pub fn eval(&self, x: f64) -> f64 {
        let (hi, lo) = self.eval_dd(x);
        hi + lo
    }

    fn eval_dd(&self, x: f64) -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = dd_add(dd_mul_f64(acc, x), split_i64(c));
        }
        acc
    }

    /// `Σ |c_i| |x|^i`, the scale against which residuals are judged.
    pub fn magnitude_at(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x.abs() + (c as f64).abs())
    }

    /// `|p(x)| / Σ |c_i| |x|^i`.
    pub fn relative_residual(&self, x: f64) -> f64 {
        self.eval(x).abs() / self.magnitude_at(x)
    }

    /// The polynomial `q(z) = p(z²)`.
    pub fn in_square(&self) -> IntegerPolynomial {
        let mut coeffs = vec![0; 2 * self.coeffs.len() - 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c;
        }
        IntegerPolynomial { coeffs }
    }

    pub fn derivative(&self) -> IntegerPolynomial {
        let coeffs: Vec<i64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as i64)
            .collect();
        IntegerPolynomial {
            coeffs: if coeffs.is_empty() { vec![0] } else { coeffs },
        }
    }

    fn to_rational(&self) -> RatPoly {
        RatPoly(
            self.coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// All distinct real roots in the open interval `(lo, hi)`, ascending.
    ///
    /// Fails with [`Error::RepeatedRoot`] when the polynomial is not square-free.
    pub fn real_roots_between(&self, lo: f64, hi: f64) -> Result<Vec<f64>> {
        let p = self.to_rational();
        let dp = p.derivative();
        if p.gcd(&dp).degree() > 0 {
            return Err(Error::RepeatedRoot);
        }
        let sturm = sturm_sequence(&p, &dp);
        let lo = BigRational::from_float(lo).expect("finite bound");
        let hi = BigRational::from_float(hi).expect("finite bound");
        let mut intervals = Vec::new();
        isolate(&sturm, lo, hi, &mut intervals, 0);
        let mut roots: Vec<f64> = intervals
            .into_iter()
            .map(|iv| match iv {
                Isolated::Exact(r) => r.to_f64().unwrap(),
                Isolated::Bracket(a, b) => self.refine(a.to_f64().unwrap(), b.to_f64().unwrap()),
            })
            .collect();
        roots.sort_by(f64::total_cmp);
        Ok(roots)
    }

    /// Bisection on a bracket known to hold exactly one simple root.
    fn refine(&self, mut a: f64, mut b: f64) -> f64 {
        let sa = self.eval(a).signum();
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let sm = self.eval(mid);
            if sm == 0.0 {
                return mid;
            }
            if sm.signum() == sa {
                a = mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    }

    /// One Newton step at a time while the compensated residual keeps shrinking.
    pub fn polish(&self, mut x: f64) -> f64 {
        let dp = self.derivative();
        let mut best = self.eval(x).abs();
        for _ in 0..8 {
            let slope = dp.eval(x);
            if slope == 0.0 {
                break;
            }
            let next = x - self.eval(x) / slope;
            let r = self.eval(next).abs();
            if r >= best {
                break;
            }
            x = next;
            best = r;
        }
        x
    }
}

/// Sorted positive roots `Z` of `p(Z²)`, where `p_in_square` holds the
/// coefficients of `p` in `W = Z²`.
pub fn positive_roots(p_in_square: &IntegerPolynomial) -> Result<Vec<f64>> {
    let w_roots = p_in_square.real_roots_between(0.0, cauchy_bound(p_in_square))?;
    let q = p_in_square.in_square();
    let mut roots: Vec<f64> = w_roots
        .into_iter()
        .filter(|&w| w > 0.0)
        .map(|w| q.polish(w.sqrt()))
        .collect();
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// The three positive roots `A > B > C` of a snub-family sextic.
pub fn root_triple(p_in_square: &IntegerPolynomial) -> Result<[f64; 3]> {
    let roots = positive_roots(p_in_square)?;
    match roots[..] {
        [c, b, a] => Ok([a, b, c]),
        _ => Err(Error::RootCount {
            expected: 3,
            found: roots.len(),
        }),
    }
}

/// The unique positive root `Z` of `p(Z²)`.
pub fn unique_positive_root(p_in_square: &IntegerPolynomial) -> Result<f64> {
    let roots = positive_roots(p_in_square)?;
    match roots[..] {
        [z] => Ok(z),
        _ => Err(Error::RootCount {
            expected: 1,
            found: roots.len(),
        }),
    }
}

fn cauchy_bound(p: &IntegerPolynomial) -> f64 {
    let lead = (*p.coeffs.last().unwrap() as f64).abs();
    let max = p.coeffs[..p.degree()]
        .iter()
        .map(|&c| (c as f64).abs())
        .fold(0.0, f64::max);
    1.0 + max / lead + 1.0
}

#[derive(Debug, Clone, PartialEq)]
struct RatPoly(Vec<BigRational>);

impl RatPoly {
    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn derivative(&self) -> RatPoly {
        RatPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
        .trimmed()
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Remainder of `self / divisor`.
    fn rem(&self, divisor: &RatPoly) -> RatPoly {
        let mut r = self.0.clone();
        let d = &divisor.0;
        let lead = d.last().unwrap();
        while r.len() >= d.len() && !r.is_empty() {
            let shift = r.len() - d.len();
            let factor = r.last().unwrap() / lead;
            for (i, c) in d.iter().enumerate() {
                r[shift + i] -= &factor * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        RatPoly(r)
    }

    fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone().trimmed(), other.clone().trimmed());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.trimmed();
        }
        a
    }
}

fn sturm_sequence(p: &RatPoly, dp: &RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![p.clone().trimmed(), dp.clone()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() || seq[n - 1].degree() == 0 {
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(RatPoly(r.0.into_iter().map(|c| -c).collect()));
    }
    seq.retain(|q| !q.is_zero());
    seq
}

fn sign_changes(seq: &[RatPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|q| {
            let v = q.eval(x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

enum Isolated {
    Exact(BigRational),
    Bracket(BigRational, BigRational),
}

/// Splits `(lo, hi)` until each piece holds one root. Endpoints are assumed not to be roots.
fn isolate(
    seq: &[RatPoly],
    lo: BigRational,
    hi: BigRational,
    out: &mut Vec<Isolated>,
    depth: usize,
) {
    let count = sign_changes(seq, &lo) as i64 - sign_changes(seq, &hi) as i64;
    if count <= 0 {
        return;
    }
    if count == 1 {
        out.push(Isolated::Bracket(lo, hi));
        return;
    }
    assert!(depth < 400, "root isolation did not separate roots");
    let two = BigRational::from_integer(BigInt::from(2));
    let mut mid = (&lo + &hi) / &two;
    if seq[0].eval(&mid).is_zero() {
        out.push(Isolated::Exact(mid.clone()));
        // step off the root so both halves have non-root endpoints
        let nudge = (&hi - &lo) / BigRational::from_integer(BigInt::from(1 << 20));
        let right = &mid + &nudge;
        mid -= nudge;
        isolate(seq, lo, mid, out, depth + 1);
        isolate(seq, right, hi, out, depth + 1);
        return;
    }
    isolate(seq, lo, mid.clone(), out, depth + 1);
    isolate(seq, mid, hi, out, depth + 1);
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

fn dd_add(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let (s, e) = two_sum(a.0, b.0);
    let e = e + a.1 + b.1;
    two_sum(s, e)
}

fn dd_mul_f64(a: (f64, f64), x: f64) -> (f64, f64) {
    let (p, e) = two_prod(a.0, x);
    let e = e + a.1 * x;
    two_sum(p, e)
}

/// Exact double-double representation of an `i64`.
fn split_i64(c: i64) -> (f64, f64) {
    let hi = c as f64;
    let lo = (c as i128 - hi as i128) as f64;
    (hi, lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::new(c.to_vec()).unwrap()
    }

    #[test]
    fn improved_snub_roots() {
        let [a, b, c] = root_triple(&poly(&[-1, 21, -105, 105])).unwrap();
        assert!((a - 0.86624682).abs() < 5e-9);
        assert!((b - 0.42251865).abs() < 5e-9);
        assert!((c - 0.26663540).abs() < 5e-9);
        assert!((a * a + b * b + c * c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tetrakis_and_cube_family_roots() {
        let [a, b, c] = root_triple(&poly(&[-1, 21, -84, 84])).unwrap();
        assert!(
            (a - 0.7980).abs() < 1e-4 && (b - 0.5488).abs() < 1e-4 && (c - 0.2492).abs() < 1e-4
        );
        let [a, b, c] = root_triple(&poly(&[-1, 441, -2835, 2835])).unwrap();
        assert!(
            (a - 0.8989).abs() < 1e-4 && (b - 0.4355).abs() < 1e-4 && (c - 0.0480).abs() < 1e-4
        );
    }

    #[test]
    fn residuals_are_at_working_precision() {
        for c in [
            [-1, 21, -105, 105],
            [-1, 21, -84, 84],
            [-1, 441, -2835, 2835],
        ] {
            let p = poly(&c);
            let q = p.in_square();
            for z in positive_roots(&p).unwrap() {
                assert!(q.relative_residual(z) <= 1e-13, "{c:?} at {z}");
            }
        }
    }

    #[test]
    fn complex_pairs_are_skipped() {
        // 7W³ - 3W² + 5W - 1 has one real root
        let b = unique_positive_root(&poly(&[-1, 5, -3, 7])).unwrap();
        assert!((b - 0.4623).abs() < 1e-4);
        assert!(matches!(
            root_triple(&poly(&[-1, 5, -3, 7])),
            Err(Error::RootCount {
                expected: 3,
                found: 1
            })
        ));
    }

    #[test]
    fn repeated_roots_rejected() {
        // (W - 1)² (W - 2)
        let p = poly(&[-2, 5, -4, 1]);
        assert_eq!(positive_roots(&p), Err(Error::RepeatedRoot));
    }

    #[test]
    fn rational_roots_found_exactly() {
        // (W - 1/4)(W - 1)(W - 4) * 4 = 4W³ - 21W² + 21W - 4
        let roots = positive_roots(&poly(&[-4, 21, -21, 4])).unwrap();
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([0.5, 1.0, 2.0]) {
            assert!((r - e).abs() < 1e-15);
        }
    }

    #[test]
    fn compensated_horner_beats_naive_near_root() {
        // (x - 1)^7 expanded; naive Horner loses everything near 1
        let p = poly(&[-1, 7, -21, 35, -35, 21, -7, 1]);
        let x = 1.0 + 1e-3;
        let exact = 1e-21_f64;
        assert!((p.eval(x) - exact).abs() < 1e-26);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(
            IntegerPolynomial::new(vec![0, 0]),
            Err(Error::ZeroPolynomial)
        );
        assert_eq!(poly(&[3, 0, 0]).degree(), 0);
    }
}
