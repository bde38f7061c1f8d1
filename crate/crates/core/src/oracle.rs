//! Dense-operator ground truth.
//!
//! Everything here works with explicit ladder matrices and matrix powers, so
//! it shares no code path with the closed-form sums in [`crate::witnesses`]
//! and [`crate::states`]. States are embedded in a space large enough that no
//! raising operation reaches the truncation edge, which makes the expectation
//! values exact for the untruncated bosonic operators.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{QcsError, Result};
use crate::fock::FockVector;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Square complex matrix acting on a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    entries: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(QcsError::domain(
                "DenseOperator",
                "matrix must be square and non-empty",
            ));
        }
        if entries
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(QcsError::domain("DenseOperator", "non-finite entry"));
        }
        Ok(DenseOperator { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn adjoint(&self) -> DenseOperator {
        DenseOperator {
            entries: self.entries.adjoint(),
        }
    }

    pub fn identity(dim: usize) -> DenseOperator {
        DenseOperator {
            entries: DMatrix::identity(dim, dim),
        }
    }
}

impl std::ops::Mul for &DenseOperator {
    type Output = DenseOperator;

    fn mul(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator {
            entries: &self.entries * &rhs.entries,
        }
    }
}

impl std::ops::Sub for &DenseOperator {
    type Output = DenseOperator;

    fn sub(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator {
            entries: &self.entries - &rhs.entries,
        }
    }
}

/// Truncated annihilation operator: `sqrt(n)` at `(n-1, n)`.
pub fn ladder_matrix(dim: usize) -> DenseOperator {
    let dim = dim.max(1);
    DenseOperator {
        entries: DMatrix::from_fn(dim, dim, |i, j| {
            if j == i + 1 {
                Complex64::new((j as f64).sqrt(), 0.0)
            } else {
                ZERO
            }
        }),
    }
}

fn embed(state: &FockVector, dim: usize) -> DVector<Complex64> {
    DVector::from_fn(dim, |n, _| state.amp(n))
}

fn inner(u: &DVector<Complex64>, v: &DVector<Complex64>) -> Complex64 {
    u.dotc(v)
}

fn one_norm(m: &DMatrix<Complex64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with a Taylor series run until
/// the terms stop changing the sum.
pub fn expm(op: &DenseOperator) -> DenseOperator {
    let a = op.matrix();
    let n = a.nrows();
    let norm = one_norm(a);
    let mut squarings = 0u32;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
    }
    let scaled = a.scale(0.5f64.powi(squarings as i32));

    let mut sum = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    for k in 1..=60 {
        term = (&term * &scaled).unscale(k as f64);
        let size = one_norm(&term);
        sum += &term;
        if size <= f64::EPSILON * one_norm(&sum) * 1e-3 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    DenseOperator { entries: sum }
}

/// First column of `exp(alpha a^dag - alpha^* a)` in dimension `d`.
pub fn displacement_exponential(d: usize, alpha: Complex64) -> Result<FockVector> {
    if d < 2 {
        return Err(QcsError::domain(
            "displacement_exponential",
            format!("dimension {d} < 2"),
        ));
    }
    let a = ladder_matrix(d);
    let generator = a.matrix().adjoint() * alpha - a.matrix() * alpha.conj();
    let u = expm(&DenseOperator { entries: generator });
    FockVector::new(u.matrix().column(0).iter().copied().collect())
}

/// `<a^dag^p a^q>` by explicit matrix application in dimension `d + max(p, q)`.
pub fn normal_ordered_expectation(state: &FockVector, p: usize, q: usize) -> Result<Complex64> {
    normal_ordered_expectation_in(state, p, q, state.dim() + p.max(q))
}

/// Same as [`normal_ordered_expectation`] with an explicit embedding dimension.
pub fn normal_ordered_expectation_in(
    state: &FockVector,
    p: usize,
    q: usize,
    dim: usize,
) -> Result<Complex64> {
    if p > 8 || q > 8 {
        return Err(QcsError::domain(
            "normal_ordered_expectation",
            format!("orders ({p}, {q}) exceed 8"),
        ));
    }
    if dim < state.dim() + p.max(q) {
        return Err(QcsError::domain(
            "normal_ordered_expectation",
            format!("embedding dimension {dim} too small"),
        ));
    }
    let a = ladder_matrix(dim);
    let psi = embed(state, dim);
    let mut lowered = psi.clone();
    for _ in 0..q {
        lowered = a.matrix() * lowered;
    }
    let adag = a.matrix().adjoint();
    let mut raised = lowered;
    for _ in 0..p {
        raised = &adag * raised;
    }
    Ok(inner(&psi, &raised))
}

/// `<(a^dag a)^n>` from the dense number operator.
pub fn number_expectation(state: &FockVector, n: usize) -> f64 {
    let dim = state.dim() + 1;
    let a = ladder_matrix(dim);
    let number = a.adjoint().matrix() * a.matrix();
    let psi = embed(state, dim);
    let mut v = psi.clone();
    for _ in 0..n {
        v = &number * v;
    }
    inner(&psi, &v).re
}

fn check_even(op: &'static str, n: usize) -> Result<()> {
    if n == 0 || !n.is_multiple_of(2) || n > 8 {
        return Err(QcsError::domain(
            op,
            format!("order {n} must be even and in 2..=8"),
        ));
    }
    Ok(())
}

/// `<(X - <X>)^n>` with `X = (a + a^dag)/sqrt(2)`, by direct matrix powers in
/// dimension `d + n`.
pub fn central_quadrature_moment(state: &FockVector, n: usize) -> Result<f64> {
    central_quadrature_moment_in(state, n, state.dim() + n)
}

pub fn central_quadrature_moment_in(state: &FockVector, n: usize, dim: usize) -> Result<f64> {
    check_even("central_quadrature_moment", n)?;
    if dim < state.dim() + n {
        return Err(QcsError::domain(
            "central_quadrature_moment",
            format!("embedding dimension {dim} too small"),
        ));
    }
    let a = ladder_matrix(dim);
    let x = (a.matrix() + a.matrix().adjoint()).unscale(std::f64::consts::SQRT_2);
    let psi = embed(state, dim);
    let mean = inner(&psi, &(&x * &psi)).re;
    let shifted = x - DMatrix::<Complex64>::identity(dim, dim) * Complex64::new(mean, 0.0);
    let mut v = psi.clone();
    for _ in 0..n {
        v = &shifted * v;
    }
    Ok(inner(&psi, &v).re)
}

/// Higher-order antibunching `D(l)` assembled from dense expectation values.
pub fn hoa(state: &FockVector, l: usize) -> Result<f64> {
    let mean = normal_ordered_expectation(state, 1, 1)?.re;
    Ok(normal_ordered_expectation(state, l + 1, l + 1)?.re - mean.powi(l as i32 + 1))
}

/// Higher-order sub-Poissonian statistic `D_h(l-1)` assembled from dense
/// factorial moments, with the combinatorial weights built independently.
pub fn hosps(state: &FockVector, l: usize) -> Result<f64> {
    let mean = normal_ordered_expectation(state, 1, 1)?.re;
    // S2 and C by table recurrence, not shared with crate::fock
    let size = l + 1;
    let mut s2 = vec![vec![0.0f64; size]; size];
    let mut binom = vec![vec![0.0f64; size]; size];
    s2[0][0] = 1.0;
    for r in 0..size {
        binom[r][0] = 1.0;
        for k in 1..=r {
            binom[r][k] = binom[r - 1][k - 1] + if k < r { binom[r - 1][k] } else { 0.0 };
            s2[r][k] = k as f64 * if k < r { s2[r - 1][k] } else { 0.0 } + s2[r - 1][k - 1];
        }
    }
    let mut total = 0.0;
    for r in 0..=l {
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        for (k, s) in s2[r].iter().enumerate().take(r + 1).skip(1) {
            let deficit = normal_ordered_expectation(state, k, k)?.re - mean.powi(k as i32);
            total += s * binom[l][r] * sign * deficit * mean.powi((l - r) as i32);
        }
    }
    Ok(total)
}

/// Agarwal-Tara moments `(m_1..m_4, mu_1..mu_4)` from dense operators.
pub fn moment_table(state: &FockVector) -> Result<([f64; 4], [f64; 4])> {
    let mut m = [0.0; 4];
    let mut mu = [0.0; 4];
    for n in 1..=4 {
        m[n - 1] = normal_ordered_expectation(state, n, n)?.re;
        mu[n - 1] = number_expectation(state, n);
    }
    Ok((m, mu))
}

/// `[a, b] = ab - ba`.
pub fn commutator(a: &DenseOperator, b: &DenseOperator) -> DenseOperator {
    &(a * b) - &(b * a)
}
