//! Invariant counting for designs built from full orbits of the rotation group
//! of the tetrahedron.
//!
//! A union of `m` generic `[3,3]+` orbits is a t-design exactly when it averages
//! every invariant homogeneous harmonic of degree `1..=t` to zero. The number of
//! such conditions is `e_t`, read off the Molien series
//! `(1 + λ⁶) / ((1 - λ³)(1 - λ⁴))`. Each orbit contributes two free parameters,
//! so `2m >= e_t` suggests `N = 12m` points suffice.

/// A rational generating function with integer coefficients, expanded as a power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MolienSeries {
    numerator: Vec<i64>,
    denominator: Vec<i64>,
}

impl MolienSeries {
    /// `denominator[0]` must be 1 so the expansion stays integral.
    pub fn new(numerator: Vec<i64>, denominator: Vec<i64>) -> Self {
        assert_eq!(
            denominator.first(),
            Some(&1),
            "denominator must have constant term 1"
        );
        MolienSeries {
            numerator,
            denominator,
        }
    }

    /// The series for `[3,3]+`.
    pub fn tetrahedral_rotations() -> Self {
        let mut numerator = vec![0; 7];
        numerator[0] = 1;
        numerator[6] = 1;
        // (1 - λ³)(1 - λ⁴) = 1 - λ³ - λ⁴ + λ⁷
        let denominator = vec![1, 0, 0, -1, -1, 0, 0, 1];
        MolienSeries::new(numerator, denominator)
    }

    /// Coefficients `d_0..=d_limit` by exact series division.
    pub fn coeffs(&self, limit: usize) -> Vec<i64> {
        let mut d = Vec::with_capacity(limit + 1);
        for j in 0..=limit {
            let mut v = self.numerator.get(j).copied().unwrap_or(0);
            for (k, &q) in self.denominator.iter().enumerate().skip(1).take(j) {
                v -= q * d[j - k];
            }
            d.push(v);
        }
        d
    }
}

/// `d_0..=d_limit` for `[3,3]+`.
pub fn molien_coeffs(limit: usize) -> Vec<i64> {
    MolienSeries::tetrahedral_rotations().coeffs(limit)
}

/// Number of invariant conditions of degree `1..=t`, `d_1 + … + d_t`.
pub fn e_t_series(t: usize) -> u64 {
    molien_coeffs(t)[1..].iter().sum::<i64>() as u64
}

const REMAINDER_OFFSETS: [i64; 12] = [0, 0, 0, 1, 2, 2, 3, 4, 5, 6, 7, 8];

/// Closed form for `e_t`, valid for `t >= 6`.
pub fn e_t_closed(t: usize) -> Option<u64> {
    if t < 6 {
        return None;
    }
    let t = t as i64;
    let f = t / 12;
    let g = (t - 6) / 12;
    let e = f * (t - 6 * f - 5)
        + g * (t - 6 - 6 * g - 5)
        + 9 * f
        + 9 * g
        + REMAINDER_OFFSETS[(t % 12) as usize]
        + REMAINDER_OFFSETS[((t - 6) % 12) as usize]
        + 1;
    Some(e as u64)
}

/// Expected number of points `12 ⌈e_t / 2⌉` of a `[3,3]+` orbit-union t-design.
///
/// Strengths up to 5 are pinned at 12, the icosahedron. Defined for `t >= 3`.
pub fn predicted_n(t: usize) -> Option<usize> {
    match t {
        0..=2 => None,
        3..=5 => Some(12),
        _ => Some(12 * e_t_series(t).div_ceil(2) as usize),
    }
}

/// Known cases where the prediction overshoots the smallest design.
pub fn prediction_caveat(t: usize) -> Option<&'static str> {
    (t == 7).then_some(
        "a 24-point 7-design exists (improved snub cube), below the orbit-count prediction",
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    // direct convolution: c_j counts 3a + 4b = j, d_j = c_j + c_{j-6}
    fn oracle(limit: usize) -> Vec<i64> {
        let mut c = vec![0i64; limit + 1];
        for a in (0..=limit).step_by(3) {
            for b in (0..=limit - a).step_by(4) {
                c[a + b] += 1;
            }
        }
        (0..=limit)
            .map(|j| c[j] + if j >= 6 { c[j - 6] } else { 0 })
            .collect()
    }

    #[test]
    fn series_matches_convolution() {
        assert_eq!(molien_coeffs(300), oracle(300));
        let d = molien_coeffs(6);
        assert_eq!(d, vec![1, 0, 0, 1, 1, 0, 2]);
    }

    #[test]
    fn cumulative_counts() {
        assert_eq!(e_t_series(7), 5);
        assert_eq!(e_t_series(10), 10);
        assert_eq!(e_t_series(13), 16);
        let e: Vec<u64> = (1..=14).map(e_t_series).collect();
        assert_eq!(e, vec![0, 0, 1, 2, 2, 4, 5, 6, 8, 10, 11, 14, 16, 18]);
    }

    #[test]
    fn closed_form_agrees_with_series() {
        for t in 6..=500 {
            assert_eq!(e_t_closed(t), Some(e_t_series(t)), "t = {t}");
        }
        assert_eq!(e_t_closed(6), Some(4));
        assert_eq!(e_t_closed(12), Some(14));
        assert_eq!(e_t_closed(5), None);
    }

    #[test]
    fn predicted_sizes() {
        let table = [
            12, 12, 12, 24, 36, 36, 48, 60, 72, 84, 96, 108, 132, 144, 156, 180, 204, 216, 240,
            264, 288, 312,
        ];
        for (t, n) in (3..=24).zip(table) {
            assert_eq!(predicted_n(t), Some(n), "t = {t}");
        }
        assert_eq!(predicted_n(2), None);
        assert!(prediction_caveat(7).is_some());
        assert!(prediction_caveat(8).is_none());
    }

    #[test]
    fn quadratic_growth() {
        for t in 200..=500 {
            let ratio = predicted_n(t).unwrap() as f64 / (t * t) as f64 * 2.0;
            assert!((0.9..=1.1).contains(&ratio), "t = {t}: {ratio}");
        }
    }
}
