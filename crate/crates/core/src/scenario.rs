//! Base-flood and sea-level-rise scenario runs.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::damage::cell_damage;
use crate::error::{Error, Result};
use crate::grid::CellIndex;
use crate::io::DamageCurve;
use crate::scalar::Scalar;
use crate::terrain::{flood_depth, CellState};

/// Default sea-level-rise increments (ft); 0 is the base flood.
pub const DEFAULT_SLR_FT: [f64; 4] = [0.0, 1.0, 2.0, 3.0];

/// What a flooded cell contributes to the flooded-area total.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AreaBasis {
    /// Parcel area intersected with the cell.
    #[default]
    Parcel,
    /// The full fishnet cell footprint.
    Cell,
}

impl FromStr for AreaBasis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parcel" => Ok(AreaBasis::Parcel),
            "cell" => Ok(AreaBasis::Cell),
            other => Err(Error::Config(format!("area basis must be 'parcel' or 'cell', got '{other}'"))),
        }
    }
}

impl fmt::Display for AreaBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AreaBasis::Parcel => "parcel",
            AreaBasis::Cell => "cell",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellOutcome<T> {
    pub cell: CellIndex,
    pub depth: T,
    pub damage: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult<T> {
    pub slr: T,
    pub total_damage: T,
    pub total_flooded_area: T,
    /// `(C_k - C_{k-1}) / C_base` as a fraction; `None` on the base row.
    pub cost_pct_delta: Option<T>,
    pub area_pct_delta: Option<T>,
    /// Flooded cells only, ascending by cell.
    pub per_cell: Vec<CellOutcome<T>>,
}

impl<T: Scalar> ScenarioResult<T> {
    /// Result carrying only totals, for reporting precomputed numbers.
    pub fn from_totals(slr: T, total_damage: T, total_flooded_area: T) -> Self {
        ScenarioResult {
            slr,
            total_damage,
            total_flooded_area,
            cost_pct_delta: None,
            area_pct_delta: None,
            per_cell: Vec::new(),
        }
    }
}

/// Evaluates one scenario. Cells without elevation or BFE never flood.
/// Totals accumulate in ascending cell order.
pub fn run_scenario<T: Scalar>(
    cells: &[CellState<T>],
    curve: &DamageCurve<T>,
    slr: T,
    basis: AreaBasis,
) -> ScenarioResult<T> {
    let mut ordered: Vec<&CellState<T>> = cells.iter().collect();
    if !ordered.windows(2).all(|w| w[0].cell < w[1].cell) {
        ordered.sort_by_key(|s| s.cell);
    }
    let mut total_damage = T::zero();
    let mut total_flooded_area = T::zero();
    let mut per_cell = Vec::new();
    for s in ordered {
        let (Some(bfe), Some(elev)) = (s.bfe, s.mean_elevation) else { continue };
        let depth = flood_depth(bfe, slr, elev);
        if !(depth > T::zero()) {
            continue;
        }
        let damage = cell_damage(s, depth, curve);
        total_damage = total_damage + damage;
        total_flooded_area = total_flooded_area
            + match basis {
                AreaBasis::Parcel => s.exposed_area,
                AreaBasis::Cell => s.cell_area,
            };
        per_cell.push(CellOutcome { cell: s.cell, depth, damage });
    }
    ScenarioResult {
        slr,
        total_damage,
        total_flooded_area,
        cost_pct_delta: None,
        area_pct_delta: None,
        per_cell,
    }
}

/// Incremental change over the base: entry `k >= 1` is
/// `(totals[k] - totals[k-1]) / totals[0]`; entry 0 is `None`.
///
/// A zero base yields `None` for later entries unless they are all zero too.
pub fn incremental_deltas<T: Scalar>(totals: &[T]) -> Vec<Option<T>> {
    let Some(&base) = totals.first() else { return Vec::new() };
    let all_zero = totals.iter().all(|t| *t == T::zero());
    std::iter::once(None)
        .chain(totals.windows(2).map(|w| {
            if base != T::zero() {
                Some((w[1] - w[0]) / base)
            } else if all_zero {
                Some(T::zero())
            } else {
                None
            }
        }))
        .collect()
}

/// Fills both delta columns of an ordered scenario list.
pub fn attach_deltas<T: Scalar>(results: &mut [ScenarioResult<T>]) {
    let cost: Vec<T> = results.iter().map(|r| r.total_damage).collect();
    let area: Vec<T> = results.iter().map(|r| r.total_flooded_area).collect();
    let (dc, da) = (incremental_deltas(&cost), incremental_deltas(&area));
    if results.len() > 1 && (cost[0] == T::zero() && dc[1..].iter().any(Option::is_none)) {
        log::warn!("base scenario has zero damage; cost deltas are undefined");
    }
    if results.len() > 1 && (area[0] == T::zero() && da[1..].iter().any(Option::is_none)) {
        log::warn!("base scenario has zero flooded area; area deltas are undefined");
    }
    for ((r, c), a) in results.iter_mut().zip(dc).zip(da) {
        r.cost_pct_delta = c;
        r.area_pct_delta = a;
    }
}

/// Runs every sea-level-rise increment (in parallel) and attaches deltas.
///
/// `slr_list` must start at 0 and be strictly ascending.
pub fn sweep<T: Scalar>(
    cells: &[CellState<T>],
    curve: &DamageCurve<T>,
    slr_list: &[T],
    basis: AreaBasis,
) -> Result<Vec<ScenarioResult<T>>> {
    validate_slr_list(slr_list)?;
    let mut results: Vec<ScenarioResult<T>> = slr_list
        .par_iter()
        .map(|&s| run_scenario(cells, curve, s, basis))
        .collect();
    for w in results.windows(2) {
        assert!(
            w[1].total_damage >= w[0].total_damage && w[1].total_flooded_area >= w[0].total_flooded_area,
            "scenario totals must be nondecreasing in sea level rise"
        );
    }
    attach_deltas(&mut results);
    Ok(results)
}

pub fn validate_slr_list<T: Scalar>(slr_list: &[T]) -> Result<()> {
    let Some(first) = slr_list.first() else {
        return Err(Error::Config("sea level rise list is empty".into()));
    };
    if *first != T::zero() {
        return Err(Error::Config(format!("sea level rise list must start at 0, got {first}")));
    }
    if slr_list.iter().any(|s| !s.is_finite()) || slr_list.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Config("sea level rise list must be strictly ascending".into()));
    }
    Ok(())
}
