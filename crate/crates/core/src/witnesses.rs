//! Moment-based nonclassicality witnesses.
//!
//! Every witness is reported so that a negative value signals nonclassicality.

use std::fmt;

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QcsError, Result};
use crate::fock::{
    binomial, build_moment_table, double_factorial, factorial_moment, ln_factorial, mean_photon,
    photon_probabilities, stirling2, FockVector, MomentTable,
};

/// `|det mu - det m|` at or below this is treated as singular.
pub const SINGULAR_DENOMINATOR: f64 = 1e-12;

/// Largest quadrature order accepted by the Hong-Mandel witness.
pub const MAX_QUADRATURE_ORDER: usize = 8;

/// `D(k-1) = <N^(k)> - <N>^k`; zero for `k = 0`.
fn factorial_deficit(state: &FockVector, k: usize, mean: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    factorial_moment(state, k as u64) - mean.powi(k as i32)
}

/// Higher-order antibunching `D(l) = <a^dag^(l+1) a^(l+1)> - <N>^(l+1)`.
pub fn hoa(state: &FockVector, l: usize) -> f64 {
    factorial_deficit(state, l + 1, mean_photon(state))
}

fn check_quadrature_order(n: usize) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) || n > MAX_QUADRATURE_ORDER {
        return Err(QcsError::domain(
            "hm_quadrature_moment",
            format!("order {n} must be even and in 2..={MAX_QUADRATURE_ORDER}"),
        ));
    }
    Ok(())
}

/// `<a^dag^k a^q>` over the Fock support.
fn normal_ordered(amps: &[Complex64], k: usize, q: usize) -> Complex64 {
    let d = amps.len();
    let top = k.max(q);
    if top >= d {
        return Complex64::new(0.0, 0.0);
    }
    (0..d - top)
        .map(|j| {
            let w = (0.5 * (ln_factorial((j + q) as u64) + ln_factorial((j + k) as u64))
                - ln_factorial(j as u64))
            .exp();
            amps[j + k].conj() * amps[j + q] * w
        })
        .sum()
}

/// `<(Delta X)^n>` for even `n`, `X = (a + a^dag)/sqrt(2)`, through the
/// normal-ordered expansion
/// `sum_r sum_i sum_k (-1)^r 2^(-n/2) (2i-1)!! C(r-2i,k) C(n,r) C(r,2i)
///  <a + a^dag>^(n-r) <a^dag^k a^(r-2i-k)>`.
pub fn hm_quadrature_moment(state: &FockVector, n: usize) -> Result<f64> {
    check_quadrature_order(n)?;
    let amps = state.amps();
    let d = amps.len();
    let first: f64 = (0..d.saturating_sub(1))
        .map(|m| {
            ((m + 1) as f64).sqrt()
                * (amps[m] * amps[m + 1].conj() + amps[m].conj() * amps[m + 1]).re
        })
        .sum();

    let mut total = Complex64::new(0.0, 0.0);
    for r in 0..=n {
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        let outer = binomial(n as u64, r as u64)? * first.powi((n - r) as i32);
        for i in 0..=r / 2 {
            let pairs = double_factorial(2 * i as i64 - 1)? * binomial(r as u64, 2 * i as u64)?;
            let rest = r - 2 * i;
            for k in 0..=rest {
                let coeff = sign * pairs * binomial(rest as u64, k as u64)? * outer;
                total += normal_ordered(amps, k, rest - k) * coeff;
            }
        }
    }
    Ok(total.re * 2f64.powf(-(n as f64) / 2.0))
}

/// Vacuum value `(n-1)!! / 2^(n/2)` of `<(Delta X)^n>`.
pub fn hos_vacuum_bound(n: usize) -> Result<f64> {
    check_quadrature_order(n)?;
    Ok(double_factorial(n as i64 - 1)? * 2f64.powf(-(n as f64) / 2.0))
}

/// Hong-Mandel witness `S(n) = <(Delta X)^n> - (n-1)!!/2^(n/2)`.
pub fn hos_witness(state: &FockVector, n: usize) -> Result<f64> {
    Ok(hm_quadrature_moment(state, n)? - hos_vacuum_bound(n)?)
}

/// Higher-order sub-Poissonian statistic `D_h(l-1)`, composed from the
/// antibunching deficits `D(k-1)` with Stirling and binomial weights.
pub fn hosps(state: &FockVector, l: usize) -> f64 {
    let mean = mean_photon(state);
    let deficits: Vec<f64> = (0..=l).map(|k| factorial_deficit(state, k, mean)).collect();
    let mut total = 0.0;
    for r in 0..=l {
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        // C(l, r) never fails for r <= l
        let weight = binomial(l as u64, r as u64).unwrap_or(0.0) * sign * mean.powi((l - r) as i32);
        let inner: f64 = (0..=r).map(|k| stirling2(r, k) * deficits[k]).sum();
        total += weight * inner;
    }
    total
}

/// Hankel matrix `[[1, x1, x2], [x1, x2, x3], [x2, x3, x4]]`.
pub fn moment_matrix(moments: [f64; 4]) -> Matrix3<f64> {
    let x = [1.0, moments[0], moments[1], moments[2], moments[3]];
    Matrix3::from_fn(|i, j| x[i + j])
}

/// `A3` from a prepared moment table.
pub fn agarwal_tara_from_table(table: &MomentTable) -> Result<f64> {
    let det_m = moment_matrix(table.m).determinant();
    let det_mu = moment_matrix(table.mu).determinant();
    let denominator = det_mu - det_m;
    if denominator.abs() <= SINGULAR_DENOMINATOR {
        return Err(QcsError::SingularMomentMatrix { denominator });
    }
    Ok(det_m / denominator)
}

/// Agarwal-Tara `A3 = det m / (det mu - det m)`.
pub fn agarwal_tara(state: &FockVector) -> Result<f64> {
    agarwal_tara_from_table(&build_moment_table(state))
}

/// Klyshko `B(n) = (n+2) p_n p_(n+2) - (n+1) p_(n+1)^2`; probabilities past the
/// support read as zero.
pub fn klyshko(state: &FockVector, n: usize) -> f64 {
    let p = |k: usize| state.amp(k).norm_sqr();
    (n + 2) as f64 * p(n) * p(n + 2) - (n + 1) as f64 * p(n + 1).powi(2)
}

/// `B(n)` for every `n` whose three probabilities lie inside the support,
/// i.e. `n = 0..=d-3`.
pub fn klyshko_table(state: &FockVector) -> Vec<f64> {
    let p = photon_probabilities(state);
    p.windows(3)
        .enumerate()
        .map(|(n, w)| (n + 2) as f64 * w[0] * w[2] - (n + 1) as f64 * w[1] * w[1])
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Hoa,
    Hos,
    Hosps,
    AgarwalTara,
    Klyshko,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::Hoa => "hoa",
            WitnessKind::Hos => "hos",
            WitnessKind::Hosps => "hosps",
            WitnessKind::AgarwalTara => "a3",
            WitnessKind::Klyshko => "klyshko",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessEntry {
    pub name: WitnessKind,
    pub order: usize,
    pub value: f64,
    pub nonclassical: bool,
}

impl WitnessEntry {
    fn new(name: WitnessKind, order: usize, value: f64) -> Self {
        WitnessEntry {
            name,
            order,
            value,
            nonclassical: value < 0.0,
        }
    }
}

/// Every witness at its customary orders. `A3` is omitted (and
/// `a3_singular` set) when its moment matrices are degenerate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub entries: Vec<WitnessEntry>,
    pub a3_singular: bool,
}

pub fn witness_report(state: &FockVector) -> WitnessReport {
    let mut entries = Vec::new();
    for l in 1..=4 {
        entries.push(WitnessEntry::new(WitnessKind::Hoa, l, hoa(state, l)));
    }
    for n in [2, 4, 6] {
        // orders are valid by construction
        if let Ok(v) = hos_witness(state, n) {
            entries.push(WitnessEntry::new(WitnessKind::Hos, n, v));
        }
    }
    for l in 2..=4 {
        entries.push(WitnessEntry::new(WitnessKind::Hosps, l, hosps(state, l)));
    }
    let a3 = agarwal_tara(state);
    let a3_singular = a3.is_err();
    if let Ok(v) = a3 {
        entries.push(WitnessEntry::new(WitnessKind::AgarwalTara, 3, v));
    }
    for (n, v) in klyshko_table(state).into_iter().enumerate() {
        entries.push(WitnessEntry::new(WitnessKind::Klyshko, n, v));
    }
    WitnessReport {
        entries,
        a3_singular,
    }
}
