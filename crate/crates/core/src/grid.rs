//! Fishnet tessellation: a regular square grid anchored at the study-area
//! south-west corner.
//!
//! Cell `(row, col)` covers `[ox + col*s, ox + (col+1)*s) x [oy + row*s, oy + (row+1)*s)`;
//! rows count northwards from the origin. The grid's east and north outer
//! edges are closed so every point of the covered extent belongs to exactly
//! one cell.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::overlay::geometry::{Point, Rect};
use crate::scalar::Scalar;

/// Row-major cell address, row 0 at the south edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellIndex {
    pub row: usize,
    pub col: usize,
}

impl CellIndex {
    pub const fn new(row: usize, col: usize) -> Self {
        CellIndex { row, col }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec<T> {
    pub origin_x: T,
    pub origin_y: T,
    pub cell_size: T,
    pub n_cols: usize,
    pub n_rows: usize,
}

/// Builds the smallest grid of `cell_size` squares anchored at the bbox
/// south-west corner that covers the whole bbox.
pub fn make_fishnet<T: Scalar>(bbox: Rect<T>, cell_size: T) -> Result<GridSpec<T>> {
    if !(cell_size > T::zero()) || !cell_size.is_finite() {
        return Err(Error::invalid(format!("non-positive cell size {cell_size}")));
    }
    let finite = [bbox.xmin, bbox.ymin, bbox.xmax, bbox.ymax].iter().all(|v| v.is_finite());
    if !finite || !(bbox.xmax > bbox.xmin) || !(bbox.ymax > bbox.ymin) {
        return Err(Error::invalid(format!(
            "degenerate bbox ({}, {}, {}, {})",
            bbox.xmin, bbox.ymin, bbox.xmax, bbox.ymax
        )));
    }
    let count = |extent: T| -> Result<usize> {
        (extent / cell_size)
            .ceil()
            .to_usize()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::invalid("grid dimension overflow"))
    };
    GridSpec::new(
        bbox.xmin,
        bbox.ymin,
        cell_size,
        count(bbox.xmax - bbox.xmin)?,
        count(bbox.ymax - bbox.ymin)?,
    )
}

impl<T: Scalar> GridSpec<T> {
    pub fn new(origin_x: T, origin_y: T, cell_size: T, n_cols: usize, n_rows: usize) -> Result<Self> {
        let g = GridSpec { origin_x, origin_y, cell_size, n_cols, n_rows };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cell_size > T::zero()) || !self.cell_size.is_finite() {
            return Err(Error::invalid(format!("non-positive cell size {}", self.cell_size)));
        }
        if self.n_cols == 0 || self.n_rows == 0 {
            return Err(Error::invalid("grid must have at least one row and column"));
        }
        if !self.origin_x.is_finite() || !self.origin_y.is_finite() {
            return Err(Error::invalid("grid origin must be finite"));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: GridSpec<T> =
            serde_json::from_str(text).map_err(|e| Error::Format(format!("grid spec: {e}")))?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("grid spec serializes")
    }

    pub fn n_cells(&self) -> usize {
        self.n_rows * self.n_cols
    }

    pub fn cell_area(&self) -> T {
        self.cell_size * self.cell_size
    }

    /// Row-major position of a cell in per-cell vectors.
    pub fn linear(&self, cell: CellIndex) -> usize {
        cell.row * self.n_cols + cell.col
    }

    pub fn cells(&self) -> impl Iterator<Item = CellIndex> + '_ {
        (0..self.n_rows).flat_map(move |row| (0..self.n_cols).map(move |col| CellIndex { row, col }))
    }

    fn x_at(&self, col: usize) -> T {
        self.origin_x + T::from_count(col) * self.cell_size
    }

    fn y_at(&self, row: usize) -> T {
        self.origin_y + T::from_count(row) * self.cell_size
    }

    pub fn extent(&self) -> Rect<T> {
        Rect::new(self.origin_x, self.origin_y, self.x_at(self.n_cols), self.y_at(self.n_rows))
    }

    pub fn cell_rect(&self, row: usize, col: usize) -> Result<Rect<T>> {
        if row >= self.n_rows || col >= self.n_cols {
            return Err(Error::IndexOutOfRange { row, col, n_rows: self.n_rows, n_cols: self.n_cols });
        }
        Ok(self.rect_unchecked(row, col))
    }

    pub(crate) fn rect_unchecked(&self, row: usize, col: usize) -> Rect<T> {
        Rect::new(self.x_at(col), self.y_at(row), self.x_at(col + 1), self.y_at(row + 1))
    }

    pub fn cell_centroid(&self, cell: CellIndex) -> Point<T> {
        let half = self.cell_size / T::lit(2.0);
        Point::new(self.x_at(cell.col) + half, self.y_at(cell.row) + half)
    }

    /// Cell owning `p` under the half-open convention, `None` outside the grid.
    pub fn locate(&self, p: Point<T>) -> Option<CellIndex> {
        let col = locate_axis(p.x, self.n_cols, |k| self.x_at(k), self.origin_x, self.cell_size)?;
        let row = locate_axis(p.y, self.n_rows, |k| self.y_at(k), self.origin_y, self.cell_size)?;
        Some(CellIndex { row, col })
    }

    /// Inclusive row and column ranges of cells that may intersect `r`,
    /// clamped to the grid; `None` when `r` lies entirely outside.
    pub(crate) fn cell_span(&self, r: &Rect<T>) -> Option<((usize, usize), (usize, usize))> {
        if !self.extent().intersects(r) {
            return None;
        }
        let span = |lo: T, hi: T, origin: T, n: usize| {
            let max = (n - 1) as i64;
            let a = ((lo - origin) / self.cell_size).floor().to_i64().unwrap_or(0) - 1;
            let b = ((hi - origin) / self.cell_size).floor().to_i64().unwrap_or(max) + 1;
            (a.clamp(0, max) as usize, b.clamp(0, max) as usize)
        };
        Some((
            span(r.ymin, r.ymax, self.origin_y, self.n_rows),
            span(r.xmin, r.xmax, self.origin_x, self.n_cols),
        ))
    }
}

/// Finds `k` with `edge(k) <= v < edge(k+1)`, closing the last interval.
/// Uses the same edge expression as `cell_rect` so membership agrees with
/// direct comparison against cell bounds.
fn locate_axis<T: Scalar>(v: T, n: usize, edge: impl Fn(usize) -> T, origin: T, size: T) -> Option<usize> {
    if !v.is_finite() {
        return None;
    }
    let last = n - 1;
    let guess = ((v - origin) / size).floor();
    let mut k = if guess <= T::zero() {
        0
    } else {
        guess.to_usize().unwrap_or(last).min(last)
    };
    loop {
        if v < edge(k) {
            if k == 0 {
                return None;
            }
            k -= 1;
        } else if v >= edge(k + 1) {
            if k == last {
                return (v == edge(k + 1)).then_some(k);
            }
            k += 1;
        } else {
            return Some(k);
        }
    }
}
