//! Entanglement-potential and distance-type measures of nonclassicality.
//!
//! The state is mixed with vacuum on a balanced beam splitter and the
//! entanglement of the two-mode output is quantified. For the negativity and
//! concurrence potentials two evaluations are kept side by side:
//!
//! * the closed forms (`*_paper`) that sum Fock contributions independently,
//! * exact evaluations (`*_exact`) from the singular values of the output
//!   amplitude matrix and the exact reduced state.
//!
//! They coincide on Fock inputs and diverge on superpositions, where the
//! closed-form negativity is an upper bound of the exact one.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QcsError, Result};
use crate::fock::{binomial, photon_probabilities, FockVector};

/// Pure two-mode output `sum A[j][i] |j, i>` of the beam splitter.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeAmplitudes {
    amps: DMatrix<Complex64>,
}

impl TwoModeAmplitudes {
    pub fn dim(&self) -> usize {
        self.amps.nrows()
    }

    /// Amplitude of `|j, i>`.
    pub fn get(&self, j: usize, i: usize) -> Complex64 {
        self.amps[(j, i)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// `2^(-n/2) sqrt(C(n, j))`, the weight of `|j, n-j>` in the image of `|n, 0>`.
fn splitting_weight(n: usize, j: usize) -> f64 {
    // j <= n at every call site
    let c = binomial(n as u64, j as u64).unwrap_or(0.0);
    c.sqrt() * 2f64.powf(-(n as f64) / 2.0)
}

/// Mixes the state with vacuum on a 50:50 beam splitter, all reflection
/// amplitudes taken positive.
pub fn beamsplit(state: &FockVector) -> TwoModeAmplitudes {
    let d = state.dim();
    let mut amps = DMatrix::zeros(d, d);
    for n in 0..d {
        let c = state.amp(n);
        for j in 0..=n {
            amps[(j, n - j)] = c * splitting_weight(n, j);
        }
    }
    TwoModeAmplitudes { amps }
}

/// Closed-form negativity potential
/// `2 log2 sum_n |c_n| 2^(-n/2) sum_j sqrt(C(n, j))`, in bits.
pub fn negativity_potential_paper(state: &FockVector) -> f64 {
    let total: f64 = (0..state.dim())
        .map(|n| {
            let spread: f64 = (0..=n).map(|j| splitting_weight(n, j)).sum();
            state.amp(n).norm() * spread
        })
        .sum();
    (2.0 * total.log2()).max(0.0)
}

/// Logarithmic negativity of the pure output, `2 log2 (sum of singular values)`.
pub fn log_negativity_exact(two_mode: &TwoModeAmplitudes) -> f64 {
    let nuclear: f64 = two_mode.amps.singular_values().iter().sum();
    (2.0 * nuclear.log2()).max(0.0)
}

fn concurrence_from_purity(purity: f64) -> f64 {
    (2.0 * (1.0 - purity)).max(0.0).sqrt()
}

/// Closed-form concurrence potential with
/// `Tr rho_A^2 = sum_n |c_n|^4 4^(-n) sum_j C(n, j)^2`.
pub fn concurrence_paper(state: &FockVector) -> f64 {
    let purity: f64 = (0..state.dim())
        .map(|n| {
            let spread: f64 = (0..=n)
                .map(|j| binomial(n as u64, j as u64).unwrap_or(0.0).powi(2))
                .sum();
            state.amp(n).norm_sqr().powi(2) * 4f64.powi(-(n as i32)) * spread
        })
        .sum();
    concurrence_from_purity(purity)
}

/// Concurrence of the pure output from the exact reduced state `rho_A = A A^dag`.
pub fn concurrence_exact(two_mode: &TwoModeAmplitudes) -> f64 {
    let rho = &two_mode.amps * two_mode.amps.adjoint();
    let purity: f64 = rho.iter().map(|c| c.norm_sqr()).sum();
    concurrence_from_purity(purity)
}

/// Degree of anticlassicality `max_n p_n` and its argmax, optionally skipping
/// the vacuum. Ties go to the smaller `n`.
pub fn anticlassicality(state: &FockVector, exclude_vacuum: bool) -> Result<(f64, usize)> {
    let start = usize::from(exclude_vacuum);
    if state.dim() <= start {
        return Err(QcsError::domain(
            "anticlassicality",
            "excluding the vacuum needs dimension >= 2",
        ));
    }
    let p = photon_probabilities(state);
    let mut best = (p[start], start);
    for (n, &pn) in p.iter().enumerate().skip(start + 1) {
        if pn > best.0 {
            best = (pn, n);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureReport {
    pub negativity_paper: f64,
    pub negativity_exact: f64,
    pub concurrence_paper: f64,
    pub concurrence_exact: f64,
    pub anticlassicality: f64,
    pub anticlassicality_excl_vacuum: f64,
    /// Argmax of the vacuum-excluded populations.
    pub argmax_n: usize,
}

pub fn measure_report(state: &FockVector) -> Result<MeasureReport> {
    let out = beamsplit(state);
    let (anticlassicality_all, _) = anticlassicality(state, false)?;
    let (excl, argmax_n) = anticlassicality(state, true)?;
    Ok(MeasureReport {
        negativity_paper: negativity_potential_paper(state),
        negativity_exact: log_negativity_exact(&out),
        concurrence_paper: concurrence_paper(state),
        concurrence_exact: concurrence_exact(&out),
        anticlassicality: anticlassicality_all,
        anticlassicality_excl_vacuum: excl,
        argmax_n,
    })
}
