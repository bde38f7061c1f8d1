use num_complex::Complex64;
use serde::Serialize;

use super::{from_physics, usage, AmplitudeExpr, SweepError};
use crate::measures::anticlassicality;
use crate::states::{build_state, QcsSpec, StateKind};

/// Dimensions scanned for each cell.
pub const TABLE1_DIMS: std::ops::RangeInclusive<usize> = 2..=12;

/// Published `A_1` values: (kind, amplitude, target).
pub const TABLE1_CELLS: [(StateKind, &str, f64); 6] = [
    (StateKind::Nonlinear, "Td/2", 0.473),
    (StateKind::Nonlinear, "Td/4", 0.233),
    (StateKind::Nonlinear, "2.5", 0.171),
    (StateKind::Linear, "Td/2", 0.217),
    (StateKind::Linear, "Td/4", 0.247),
    (StateKind::Linear, "2.5", 0.164),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Cell {
    pub kind: StateKind,
    pub amplitude: AmplitudeExpr,
    pub target: f64,
    /// `(d, A_1)` for every scanned dimension.
    pub grid: Vec<(usize, f64)>,
    pub matches: Vec<usize>,
    pub nearest_d: usize,
    pub nearest_value: f64,
    /// Set when nothing matched: the dimension behind the published value is
    /// not stated, so a miss is reported rather than hidden.
    pub note: Option<String>,
}

impl Table1Cell {
    pub fn matched(&self) -> bool {
        !self.matches.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table1Report {
    pub tolerance: f64,
    pub cells: Vec<Table1Cell>,
}

pub fn table1_search(tolerance: f64) -> Result<Table1Report, SweepError> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(usage(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let mut cells = Vec::with_capacity(TABLE1_CELLS.len());
    for (kind, amp, target) in TABLE1_CELLS {
        let amplitude: AmplitudeExpr = amp.parse().expect("table amplitudes are well formed");
        let mut grid = Vec::new();
        for d in TABLE1_DIMS {
            let a = amplitude.resolve(d).map_err(from_physics)?;
            let spec = QcsSpec::new(kind, d, Complex64::new(a, 0.0)).map_err(from_physics)?;
            let state = build_state(&spec).map_err(from_physics)?;
            let (value, _) = anticlassicality(&state, true).map_err(from_physics)?;
            grid.push((d, value));
        }
        let matches: Vec<usize> = grid
            .iter()
            .filter(|(_, v)| (v - target).abs() <= tolerance)
            .map(|&(d, _)| d)
            .collect();
        let &(nearest_d, nearest_value) = grid
            .iter()
            .min_by(|x, y| (x.1 - target).abs().total_cmp(&(y.1 - target).abs()))
            .expect("grid is non-empty");
        let note = matches.is_empty().then(|| {
            format!(
                "no d in 2..=12 within {tolerance}; nearest d={nearest_d} gives {nearest_value:.4}; \
                 the dimension for this value is ambiguous"
            )
        });
        cells.push(Table1Cell {
            kind,
            amplitude,
            target,
            grid,
            matches,
            nearest_d,
            nearest_value,
            note,
        });
    }
    Ok(Table1Report { tolerance, cells })
}
