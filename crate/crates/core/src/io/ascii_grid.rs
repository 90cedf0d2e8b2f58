//! ESRI ASCII grid reader and canonical writer.
//!
//! ```text
//! ncols 2
//! nrows 2
//! xllcorner 0
//! yllcorner 0
//! cellsize 98
//! nodata_value -9999
//! 1 2
//! 3 4
//! ```
//!
//! Values are row-major with the first row northernmost.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::overlay::geometry::Point;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Raster<T> {
    pub ncols: usize,
    pub nrows: usize,
    pub xllcorner: T,
    pub yllcorner: T,
    pub cellsize: T,
    pub nodata_value: T,
    pub values: Vec<T>,
}

impl<T: Scalar> Raster<T> {
    pub fn new(
        ncols: usize,
        nrows: usize,
        xllcorner: T,
        yllcorner: T,
        cellsize: T,
        nodata_value: T,
        values: Vec<T>,
    ) -> Result<Self> {
        let r = Raster { ncols, nrows, xllcorner, yllcorner, cellsize, nodata_value, values };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ncols == 0 || self.nrows == 0 {
            return Err(Error::invalid("raster needs ncols >= 1 and nrows >= 1"));
        }
        if !(self.cellsize > T::zero()) {
            return Err(Error::invalid(format!("raster cellsize must be positive, got {}", self.cellsize)));
        }
        let expected = self.ncols * self.nrows;
        if self.values.len() != expected {
            return Err(Error::invalid(format!(
                "value count mismatch: expected {expected}, found {}",
                self.values.len()
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn is_nodata(&self, v: T) -> bool {
        v == self.nodata_value
    }

    /// Value at `(row, col)`, `None` for NODATA.
    pub fn get(&self, row: usize, col: usize) -> Option<T> {
        let v = self.values[row * self.ncols + col];
        (!self.is_nodata(v)).then_some(v)
    }

    /// Planar centre of pixel `(row, col)`; row 0 is the northern edge.
    #[inline]
    pub fn cell_center(&self, row: usize, col: usize) -> Point<T> {
        let half = T::lit(0.5);
        Point::new(
            self.xllcorner + (T::from_count(col) + half) * self.cellsize,
            self.yllcorner + (T::from_count(self.nrows - row) - half) * self.cellsize,
        )
    }
}

const KEYS: [&str; 6] = ["ncols", "nrows", "xllcorner", "yllcorner", "cellsize", "nodata_value"];

pub fn parse_ascii_grid<T: Scalar>(text: &str) -> Result<Raster<T>> {
    let mut header: [Option<&str>; 6] = [None; 6];
    let mut lines = text.lines().enumerate().peekable();
    let mut seen = 0;

    while seen < KEYS.len() {
        let Some(&(idx, line)) = lines.peek() else { break };
        let mut toks = line.split_whitespace();
        let Some(key) = toks.next() else {
            lines.next();
            continue;
        };
        if !key.starts_with(|c: char| c.is_ascii_alphabetic()) {
            break;
        }
        lines.next();
        let lineno = idx + 1;
        let lower = key.to_ascii_lowercase();
        let slot = KEYS
            .iter()
            .position(|k| *k == lower)
            .ok_or_else(|| Error::parse(lineno, 1, format!("unknown header key '{key}'")))?;
        if header[slot].is_some() {
            return Err(Error::parse(lineno, 1, format!("duplicate header key '{key}'")));
        }
        let value = toks
            .next()
            .ok_or_else(|| Error::parse(lineno, 2, format!("header key '{key}' has no value")))?;
        if toks.next().is_some() {
            return Err(Error::parse(lineno, 3, format!("unexpected token after header key '{key}'")));
        }
        header[slot] = Some(value);
        seen += 1;
    }

    let data_line = lines.peek().map_or(text.lines().count() + 1, |(i, _)| i + 1);
    let field = |slot: usize| -> Result<&str> {
        header[slot]
            .ok_or_else(|| Error::parse(data_line, 1, format!("missing header key '{}'", KEYS[slot])))
    };
    let count = |slot: usize| -> Result<usize> {
        let raw = field(slot)?;
        raw.parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Format(format!("header '{}' must be a positive integer, got '{raw}'", KEYS[slot])))
    };
    let number = |slot: usize| -> Result<T> {
        let raw = field(slot)?;
        raw.parse::<T>()
            .map_err(|_| Error::Format(format!("header '{}' is not numeric: '{raw}'", KEYS[slot])))
    };

    let ncols = count(0)?;
    let nrows = count(1)?;
    let xllcorner = number(2)?;
    let yllcorner = number(3)?;
    let cellsize = number(4)?;
    let nodata_value = number(5)?;
    if !(cellsize > T::zero()) {
        return Err(Error::Format(format!("cellsize must be positive, got {cellsize}")));
    }

    let expected = ncols
        .checked_mul(nrows)
        .ok_or_else(|| Error::Format("ncols x nrows overflows".into()))?;
    let mut values = Vec::with_capacity(expected);
    let mut last_line = data_line;
    for (idx, line) in lines {
        for (t, tok) in line.split_whitespace().enumerate() {
            let v = tok
                .parse::<T>()
                .map_err(|_| Error::parse(idx + 1, t + 1, format!("non-numeric token '{tok}'")))?;
            values.push(v);
        }
        last_line = idx + 1;
    }
    if values.len() != expected {
        return Err(Error::parse(
            last_line,
            values.len(),
            format!("value count mismatch: expected {expected}, found {}", values.len()),
        ));
    }

    Ok(Raster { ncols, nrows, xllcorner, yllcorner, cellsize, nodata_value, values })
}

/// Canonical serialization: lowercase keys, single spaces, one raster row
/// per line, shortest round-trip decimals, trailing newline.
pub fn write_ascii_grid<T: Scalar>(r: &Raster<T>) -> String {
    let mut out = String::with_capacity(64 + r.values.len() * 8);
    let _ = writeln!(out, "ncols {}", r.ncols);
    let _ = writeln!(out, "nrows {}", r.nrows);
    let _ = writeln!(out, "xllcorner {}", r.xllcorner);
    let _ = writeln!(out, "yllcorner {}", r.yllcorner);
    let _ = writeln!(out, "cellsize {}", r.cellsize);
    let _ = writeln!(out, "nodata_value {}", r.nodata_value);
    for row in r.values.chunks(r.ncols) {
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}
