//! Linear and nonlinear qudit coherent states.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QcsError, Result};
use crate::fock::{ln_factorial, FockVector};
use crate::hermite::{he_eval, he_roots};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    /// Truncated Poissonian expansion, amplitude `beta`.
    Linear,
    /// Truncated displacement of the vacuum, amplitude `alpha`.
    Nonlinear,
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateKind::Linear => "linear",
            StateKind::Nonlinear => "nonlinear",
        })
    }
}

impl FromStr for StateKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "linear" => Ok(StateKind::Linear),
            "nonlinear" => Ok(StateKind::Nonlinear),
            other => Err(format!(
                "unknown state kind `{other}` (expected linear|nonlinear)"
            )),
        }
    }
}

/// Which state to build: kind, dimension `d >= 2` and complex amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QcsSpec {
    pub kind: StateKind,
    pub dim: usize,
    pub amplitude: Complex64,
}

impl QcsSpec {
    pub fn new(kind: StateKind, dim: usize, amplitude: Complex64) -> Result<Self> {
        check_dim("QcsSpec", dim)?;
        if !(amplitude.re.is_finite() && amplitude.im.is_finite()) {
            return Err(QcsError::domain("QcsSpec", "amplitude must be finite"));
        }
        Ok(QcsSpec {
            kind,
            dim,
            amplitude,
        })
    }
}

fn check_dim(op: &'static str, d: usize) -> Result<()> {
    if d < 2 {
        return Err(QcsError::domain(op, format!("dimension {d} < 2")));
    }
    Ok(())
}

/// Recurrence period `T_d` of the nonlinear state in `|alpha|`.
pub fn period(d: usize) -> Result<f64> {
    match d {
        0 | 1 => Err(QcsError::domain("period", format!("dimension {d} < 2"))),
        2 => Ok(PI),
        3 => Ok(2.0 * PI / 3f64.sqrt()),
        _ => Ok(((4 * d + 2) as f64).sqrt()),
    }
}

/// Unnormalized-by-construction amplitudes of the nonlinear state from the
/// Hermite spectral sum. Exposed so the norm can be inspected before
/// [`FockVector`] renormalizes it.
pub fn nonlinear_amplitudes(d: usize, alpha: Complex64) -> Result<Vec<Complex64>> {
    check_dim("nonlinear_qcs", d)?;
    let roots = he_roots(d)?;
    let r = alpha.norm();
    let phi0 = if r == 0.0 { 0.0 } else { alpha.arg() };

    // Gauss-Hermite weight (d-1)! / (d He_{d-1}(x_k)^2) times exp(i x_k |alpha|).
    let ln_prefactor = ln_factorial(d as u64 - 1) - (d as f64).ln();
    let weighted: Vec<(f64, Complex64)> = roots
        .roots()
        .iter()
        .map(|&x| {
            let h = he_eval(d - 1, x);
            let w = (ln_prefactor - 2.0 * h.abs().ln()).exp();
            (x, Complex64::from_polar(w, x * r))
        })
        .collect();

    Ok((0..d)
        .map(|n| {
            let sum: Complex64 = weighted.iter().map(|&(x, w)| w * he_eval(n, x)).sum();
            let scale = (-0.5 * ln_factorial(n as u64)).exp();
            sum * Complex64::from_polar(scale, n as f64 * (phi0 - FRAC_PI_2))
        })
        .collect())
}

/// `exp(alpha a_d^dag - alpha^* a_d)|0>` through the spectral expansion over
/// the roots of `He_d`.
pub fn nonlinear_qcs(d: usize, alpha: Complex64) -> Result<FockVector> {
    FockVector::new(nonlinear_amplitudes(d, alpha)?)
}

/// Amplitudes `beta^n / sqrt(n!)` normalized over `n < d`.
pub fn linear_amplitudes(d: usize, beta: Complex64) -> Result<Vec<Complex64>> {
    check_dim("linear_qcs", d)?;
    let mut amps = Vec::with_capacity(d);
    let mut term = Complex64::new(1.0, 0.0);
    for n in 0..d {
        if n > 0 {
            term = term * beta / (n as f64).sqrt();
        }
        amps.push(term);
    }
    let norm = amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    Ok(amps.into_iter().map(|c| c / norm).collect())
}

pub fn linear_qcs(d: usize, beta: Complex64) -> Result<FockVector> {
    FockVector::new(linear_amplitudes(d, beta)?)
}

pub fn build_state(spec: &QcsSpec) -> Result<FockVector> {
    match spec.kind {
        StateKind::Linear => linear_qcs(spec.dim, spec.amplitude),
        StateKind::Nonlinear => nonlinear_qcs(spec.dim, spec.amplitude),
    }
}
