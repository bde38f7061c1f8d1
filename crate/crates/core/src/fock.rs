//! Fock-basis pure states, combinatorial factors and photon-number moments.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QcsError, Result};

/// Largest deviation of the input norm from one that construction will absorb
/// by renormalizing.
pub const RENORMALIZE_TOLERANCE: f64 = 1e-6;

/// Pure state `sum_n c_n |n>` with support on `|0>, ..., |d-1>`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: Vec<Complex64>,
}

impl FockVector {
    /// Builds a state from raw amplitudes, renormalizing when the norm is within
    /// [`RENORMALIZE_TOLERANCE`] of one.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(QcsError::InvalidState("no amplitudes".into()));
        }
        if amps.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(QcsError::InvalidState("non-finite amplitude".into()));
        }
        let norm = amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() >= RENORMALIZE_TOLERANCE {
            return Err(QcsError::InvalidState(format!(
                "norm {norm} deviates from 1 by more than {RENORMALIZE_TOLERANCE:e}"
            )));
        }
        Ok(FockVector {
            amps: amps.into_iter().map(|c| c / norm).collect(),
        })
    }

    /// Normalizes an arbitrary nonzero vector. Used for hand-built superpositions.
    pub fn normalized(amps: Vec<Complex64>) -> Result<Self> {
        let norm = amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(QcsError::InvalidState(format!(
                "cannot normalize vector of norm {norm}"
            )));
        }
        FockVector::new(amps.into_iter().map(|c| c / norm).collect())
    }

    /// Fock state `|n>` embedded in dimension `dim`.
    pub fn fock(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(QcsError::domain(
                "fock",
                format!("n = {n} does not fit in dim = {dim}"),
            ));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[n] = Complex64::new(1.0, 0.0);
        Ok(FockVector { amps })
    }

    pub fn vacuum(dim: usize) -> Result<Self> {
        FockVector::fock(0, dim)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// Amplitude `c_n`, zero outside the support.
    pub fn amp(&self, n: usize) -> Complex64 {
        self.amps.get(n).copied().unwrap_or_default()
    }
}

/// `j (j-1) ... (j-k+1)`; one for `k = 0`, zero for `k > j`.
pub fn falling_factorial(j: u64, k: u64) -> f64 {
    if k > j {
        return 0.0;
    }
    (0..k).map(|i| (j - i) as f64).product()
}

/// `ln n!` by direct summation; `n` stays small throughout this crate.
pub fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

pub fn factorial(n: u64) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Binomial coefficient `C(n, j)`.
///
/// Exact through `u128` while the running product fits, log-domain beyond.
pub fn binomial(n: u64, j: u64) -> Result<f64> {
    if j > n {
        return Err(QcsError::domain(
            "binomial",
            format!("j = {j} exceeds n = {n}"),
        ));
    }
    let k = j.min(n - j);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) since acc = C(n, i).
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1),
            None => {
                let ln = ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k);
                return Ok(ln.exp().round());
            }
        }
    }
    Ok(acc as f64)
}

/// Stirling number of the second kind `S2(r, k)`.
pub fn stirling2(r: usize, k: usize) -> f64 {
    if k > r {
        return 0.0;
    }
    // row holds S2(i, 0..=k) while i advances to r
    let mut row = vec![0.0_f64; k + 1];
    row[0] = 1.0;
    for _ in 0..r {
        for kk in (1..=k).rev() {
            row[kk] = kk as f64 * row[kk] + row[kk - 1];
        }
        row[0] = 0.0;
    }
    row[k]
}

/// `n!!` with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<f64> {
    if n < -1 {
        return Err(QcsError::domain(
            "double_factorial",
            format!("n = {n} < -1"),
        ));
    }
    let mut acc = 1.0;
    let mut m = n;
    while m > 1 {
        acc *= m as f64;
        m -= 2;
    }
    Ok(acc)
}

/// `p_n = |c_n|^2`.
pub fn photon_probabilities(state: &FockVector) -> Vec<f64> {
    state.amps().iter().map(|c| c.norm_sqr()).collect()
}

/// `<N> = sum_j j |c_j|^2`.
pub fn mean_photon(state: &FockVector) -> f64 {
    state
        .amps()
        .iter()
        .enumerate()
        .map(|(j, c)| j as f64 * c.norm_sqr())
        .sum()
}

/// Factorial moment `<a^dag^n a^n> = sum_j j!/(j-n)! |c_j|^2` for any order.
pub fn factorial_moment(state: &FockVector, n: u64) -> f64 {
    state
        .amps()
        .iter()
        .enumerate()
        .map(|(j, c)| falling_factorial(j as u64, n) * c.norm_sqr())
        .sum()
}

fn check_order(op: &'static str, n: usize) -> Result<()> {
    if (1..=4).contains(&n) {
        Ok(())
    } else {
        Err(QcsError::domain(
            op,
            format!("moment order {n} outside 1..=4"),
        ))
    }
}

/// Normal-ordered moment `m_n = <a^dag^n a^n>`, `n` in `1..=4`.
pub fn normal_moment(state: &FockVector, n: usize) -> Result<f64> {
    check_order("normal_moment", n)?;
    Ok(factorial_moment(state, n as u64))
}

/// Number-operator moment `mu_n = <(a^dag a)^n>` through its Stirling expansion
/// in factorial moments, `n` in `1..=4`.
pub fn number_moment(state: &FockVector, n: usize) -> Result<f64> {
    check_order("number_moment", n)?;
    Ok((0..=n)
        .map(|k| stirling2(n, k) * factorial_moment(state, k as u64))
        .sum())
}

/// Moments `m_1..m_4` and `mu_1..mu_4` feeding the Agarwal-Tara matrices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentTable {
    pub m: [f64; 4],
    pub mu: [f64; 4],
}

impl MomentTable {
    /// `m_n` with `m_0 = 1`.
    pub fn normal(&self, n: usize) -> f64 {
        if n == 0 {
            1.0
        } else {
            self.m[n - 1]
        }
    }

    /// `mu_n` with `mu_0 = 1`.
    pub fn number(&self, n: usize) -> f64 {
        if n == 0 {
            1.0
        } else {
            self.mu[n - 1]
        }
    }
}

pub fn build_moment_table(state: &FockVector) -> MomentTable {
    let mut m = [0.0; 4];
    let mut mu = [0.0; 4];
    for n in 1..=4 {
        m[n - 1] = factorial_moment(state, n as u64);
    }
    for n in 1..=4 {
        mu[n - 1] = (0..=n)
            .map(|k| stirling2(n, k) * if k == 0 { 1.0 } else { m[k - 1] })
            .sum();
    }
    MomentTable { m, mu }
}
