//! Parcel/fishnet intersection and area-weighted value apportionment.

pub mod geometry;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{CellIndex, GridSpec};
use crate::io::Parcel;
use crate::scalar::Scalar;

pub use geometry::{clip_ring_to_rect, point_in_polygon, shoelace_area, Point, Rect};

/// Clipped pieces smaller than this (ft²) are dropped.
pub const SLIVER_AREA: f64 = 1e-6;

/// The slice of one parcel that falls in one fishnet cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellAttribution<T> {
    pub cell: CellIndex,
    pub parcel_id: String,
    pub clipped_area: T,
    pub apportioned_value: T,
}

/// Area of the parcel (outer ring minus holes) inside `rect`, floored at 0.
pub fn clipped_parcel_area<T: Scalar>(parcel: &Parcel<T>, rect: &Rect<T>) -> T {
    let outer = geometry::signed_area(&clip_ring_to_rect(&parcel.outer_ring, rect)).abs();
    let holes: T = parcel
        .holes
        .iter()
        .map(|h| geometry::signed_area(&clip_ring_to_rect(h, rect)).abs())
        .sum();
    (outer - holes).max(T::zero())
}

/// Splits a parcel's assessed value over the cells it overlaps in proportion
/// to clipped area. The denominator is the parcel's geometric area (or its
/// MultiPolygon feature's total area), so area outside the grid carries its
/// share of value out with it. Cells are returned in row-major order.
pub fn apportion<T: Scalar>(parcel: &Parcel<T>, grid: &GridSpec<T>) -> Result<Vec<CellAttribution<T>>> {
    let area = parcel.geometric_area();
    let basis = parcel.value_basis_area();
    if !(area > T::zero()) || !(basis > T::zero()) {
        return Err(Error::invalid(format!("degenerate parcel '{}': zero geometric area", parcel.parcel_id)));
    }
    let bounds = parcel.bounds();
    let Some(((r0, r1), (c0, c1))) = grid.cell_span(&bounds) else {
        return Ok(Vec::new());
    };
    let sliver = T::lit(SLIVER_AREA);
    let mut out = Vec::new();
    for row in r0..=r1 {
        for col in c0..=c1 {
            let rect = grid.rect_unchecked(row, col);
            if !rect.intersects(&bounds) {
                continue;
            }
            let clipped_area = clipped_parcel_area(parcel, &rect);
            if clipped_area < sliver {
                continue;
            }
            out.push(CellAttribution {
                cell: CellIndex { row, col },
                parcel_id: parcel.parcel_id.clone(),
                clipped_area,
                apportioned_value: parcel.current_assessment * clipped_area / basis,
            });
        }
    }
    Ok(out)
}

/// Apportions every parcel (in parallel on the current rayon pool) and
/// returns all attributions sorted by parcel id then cell, which fixes the
/// order of every downstream sum.
pub fn apportion_all<T: Scalar>(parcels: &[Parcel<T>], grid: &GridSpec<T>) -> Result<Vec<CellAttribution<T>>> {
    let per_parcel = parcels
        .par_iter()
        .map(|p| apportion(p, grid))
        .collect::<Result<Vec<_>>>()?;
    let mut all: Vec<CellAttribution<T>> = per_parcel.into_iter().flatten().collect();
    all.sort_by(|a, b| a.parcel_id.cmp(&b.parcel_id).then(a.cell.cmp(&b.cell)));
    Ok(all)
}

/// Debug dump `row,col,parcel_id,clipped_area,apportioned_value`.
pub fn attribution_csv<T: Scalar>(attributions: &[CellAttribution<T>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["row", "col", "parcel_id", "clipped_area", "apportioned_value"])
        .expect("in-memory write");
    for a in attributions {
        w.write_record([
            a.cell.row.to_string(),
            a.cell.col.to_string(),
            a.parcel_id.clone(),
            a.clipped_area.to_string(),
            a.apportioned_value.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8 csv")
}
