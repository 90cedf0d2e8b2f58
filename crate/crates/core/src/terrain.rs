//! Per-cell ground elevation, base flood elevation and exposure.

use crate::grid::{CellIndex, GridSpec};
use crate::io::{BfeZone, Raster};
use crate::overlay::CellAttribution;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct CellState<T> {
    pub cell: CellIndex,
    pub mean_elevation: Option<T>,
    pub bfe: Option<T>,
    /// Sum of apportioned parcel value in the cell (USD).
    pub exposed_value: T,
    /// Sum of clipped parcel area in the cell (ft²).
    pub exposed_area: T,
    /// Footprint of the fishnet cell itself (ft²).
    pub cell_area: T,
}

/// Mean of the non-NODATA DEM pixels whose centres fall in each fishnet
/// cell. Indexed row-major by [`GridSpec::linear`]; `None` where no pixel
/// centre landed.
pub fn zonal_mean_elevation<T: Scalar>(dem: &Raster<T>, grid: &GridSpec<T>) -> Vec<Option<T>> {
    let mut sum = vec![T::zero(); grid.n_cells()];
    let mut count = vec![0usize; grid.n_cells()];
    for row in 0..dem.nrows {
        for col in 0..dem.ncols {
            let Some(v) = dem.get(row, col) else { continue };
            if let Some(cell) = grid.locate(dem.cell_center(row, col)) {
                let k = grid.linear(cell);
                sum[k] = sum[k] + v;
                count[k] += 1;
            }
        }
    }
    sum.into_iter()
        .zip(count)
        .map(|(s, n)| (n > 0).then(|| s / T::from_count(n)))
        .collect()
}

/// BFE of the first zone (input order) containing each cell centroid.
pub fn assign_bfe<T: Scalar>(grid: &GridSpec<T>, zones: &[BfeZone<T>]) -> Vec<Option<T>> {
    grid.cells()
        .map(|cell| {
            let c = grid.cell_centroid(cell);
            zones.iter().find(|z| z.contains(c)).map(|z| z.static_bfe)
        })
        .collect()
}

/// Water surface (`bfe + slr`) minus ground; positive means flooded.
#[inline]
pub fn flood_depth<T: Scalar>(bfe: T, slr: T, elevation: T) -> T {
    (bfe + slr) - elevation
}

/// Joins elevations, BFEs and sorted attributions into one state per cell.
pub fn build_cell_states<T: Scalar>(
    grid: &GridSpec<T>,
    elevations: &[Option<T>],
    bfes: &[Option<T>],
    attributions: &[CellAttribution<T>],
) -> Vec<CellState<T>> {
    let mut states: Vec<CellState<T>> = grid
        .cells()
        .map(|cell| {
            let k = grid.linear(cell);
            CellState {
                cell,
                mean_elevation: elevations[k],
                bfe: bfes[k],
                exposed_value: T::zero(),
                exposed_area: T::zero(),
                cell_area: grid.cell_area(),
            }
        })
        .collect();
    for a in attributions {
        let s = &mut states[grid.linear(a.cell)];
        s.exposed_value = s.exposed_value + a.apportioned_value;
        s.exposed_area = s.exposed_area + a.clipped_area;
    }
    states
}

/// Dump `row,col,mean_elevation,bfe,exposed_value,exposed_area`; absent
/// values are empty, money is rounded to cents.
pub fn cells_csv<T: Scalar>(states: &[CellState<T>]) -> String {
    use std::fmt::Write as _;
    let opt = |v: Option<T>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut out = String::from("row,col,mean_elevation,bfe,exposed_value,exposed_area\n");
    for s in states {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.2},{}",
            s.cell.row,
            s.cell.col,
            opt(s.mean_elevation),
            opt(s.bfe),
            crate::io::geojson::cents(s.exposed_value.as_f64()),
            s.exposed_area
        );
    }
    out
}
