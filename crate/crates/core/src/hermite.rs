//! Probabilists' Hermite polynomials `He_n` and their roots.
//!
//! The roots of `He_d` are the eigenvalues of the truncated position-like
//! matrix `a_d + a_d^dag`, a symmetric tridiagonal matrix with zero diagonal
//! and off-diagonal `sqrt(1), ..., sqrt(d-1)`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{QcsError, Result};

pub const MAX_EVAL_DEGREE: usize = 200;
pub const MAX_ROOT_DEGREE: usize = 60;

/// `He_n(x)` via `He_{n+1} = x He_n - n He_{n-1}`.
///
/// Degrees above [`MAX_EVAL_DEGREE`] are a contract violation (checked in
/// debug builds).
pub fn he_eval(n: usize, x: f64) -> f64 {
    debug_assert!(n <= MAX_EVAL_DEGREE, "He_{n} requested");
    he_pair(n, x).1
}

/// `(He_{n-1}(x), He_n(x))`, with `He_{-1} = 0`.
fn he_pair(n: usize, x: f64) -> (f64, f64) {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = x * cur - k as f64 * prev;
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

/// All roots of `He_d`, ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HermiteRootSet {
    degree: usize,
    roots: Vec<f64>,
}

impl HermiteRootSet {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    /// Largest `|He_d(x_k)|` over the root set.
    pub fn max_residual(&self) -> f64 {
        self.roots
            .iter()
            .map(|&x| he_eval(self.degree, x).abs())
            .fold(0.0, f64::max)
    }

    /// Largest Newton correction `|He_d(x_k) / He_d'(x_k)|`, i.e. the distance
    /// to the true root in first order.
    pub fn max_root_error(&self) -> f64 {
        self.roots
            .iter()
            .map(|&x| newton_step(self.degree, x).abs())
            .fold(0.0, f64::max)
    }
}

fn newton_step(d: usize, x: f64) -> f64 {
    let (lower, value) = he_pair(d, x);
    // He_d' = d He_{d-1}
    value / (d as f64 * lower)
}

/// Roots of `He_d` for `1 <= d <= 60`.
pub fn he_roots(d: usize) -> Result<HermiteRootSet> {
    if !(1..=MAX_ROOT_DEGREE).contains(&d) {
        return Err(QcsError::domain(
            "he_roots",
            format!("degree {d} outside 1..={MAX_ROOT_DEGREE}"),
        ));
    }
    let jacobi = DMatrix::from_fn(d, d, |i, j| {
        if i + 1 == j {
            (j as f64).sqrt()
        } else if j + 1 == i {
            (i as f64).sqrt()
        } else {
            0.0
        }
    });
    let mut eig: Vec<f64> = jacobi.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|a, b| a.total_cmp(b));

    // Polish the non-negative half and mirror it, so the set is exactly
    // symmetric and the middle root of odd degree is exactly zero.
    let half = d / 2;
    let mut roots = vec![0.0; d];
    for k in 0..half {
        let x = eig[d - 1 - k].abs();
        let polished = x - newton_step(d, x);
        roots[d - 1 - k] = polished;
        roots[k] = -polished;
    }
    Ok(HermiteRootSet { degree: d, roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// Physicists' Hermite polynomial from its own recurrence.
    fn physicists(n: usize, x: f64) -> f64 {
        let (mut prev, mut cur) = (0.0, 1.0);
        for k in 0..n {
            let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    #[test]
    fn he_eval_small_cases() {
        assert_eq!(he_eval(0, 3.7), 1.0);
        assert_eq!(he_eval(1, 3.7), 3.7);
        assert_eq!(he_eval(2, 2.0), 3.0);
    }

    #[test]
    fn he_matches_scaled_physicists() {
        for n in 0..=12 {
            for &x in &[-2.2, -0.4, 0.0, 1.3, 3.1] {
                let expected = 2f64.powf(-(n as f64) / 2.0) * physicists(n, x / 2f64.sqrt());
                let got = he_eval(n, x);
                assert!(
                    (got - expected).abs() <= 1e-12 * expected.abs().max(1.0),
                    "n={n} x={x}"
                );
            }
        }
    }

    #[test]
    fn low_degree_roots() {
        let r = he_roots(1).unwrap();
        assert_eq!(r.roots(), &[0.0]);
        let r = he_roots(2).unwrap();
        assert_abs_diff_eq!(r.roots()[0], -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.roots()[1], 1.0, epsilon = 1e-15);
        let r = he_roots(3).unwrap();
        let s3 = 3f64.sqrt();
        assert_abs_diff_eq!(r.roots()[0], -s3, epsilon = 1e-15);
        assert_eq!(r.roots()[1], 0.0);
        assert_abs_diff_eq!(r.roots()[2], s3, epsilon = 1e-15);
    }

    #[test]
    fn degree_seven_residual() {
        let r = he_roots(7).unwrap();
        assert!(r.max_residual() < 1e-10, "{}", r.max_residual());
    }

    #[test]
    fn roots_sorted_symmetric_distinct() {
        for d in 1..=MAX_ROOT_DEGREE {
            let r = he_roots(d).unwrap();
            let x = r.roots();
            assert_eq!(x.len(), d);
            for k in 0..d {
                assert!((x[k] + x[d - 1 - k]).abs() <= 1e-10);
            }
            assert!(x.windows(2).all(|w| w[0] < w[1]), "d={d}");
        }
    }

    #[test]
    fn residuals_within_precision_limits() {
        // Absolute residuals are meaningful only while |He_d| stays moderate
        // near the roots; beyond that the root error is the honest measure.
        for d in 1..=8 {
            let r = he_roots(d).unwrap();
            assert!(r.max_residual() < 1e-10, "d={d}: {}", r.max_residual());
        }
        for d in 1..=30 {
            let r = he_roots(d).unwrap();
            let scale = r.roots().iter().fold(1.0f64, |m, x| m.max(x.abs()));
            assert!(
                r.max_root_error() < 1e-10 * scale,
                "d={d}: {}",
                r.max_root_error()
            );
        }
    }

    #[test]
    fn out_of_range_degree() {
        assert!(he_roots(0).is_err());
        assert!(he_roots(61).is_err());
    }
}
