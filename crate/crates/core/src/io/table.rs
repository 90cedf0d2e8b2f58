//! Parcel attribute table used by the exploratory analysis.

use std::io::Read;

use crate::eda::EdaRecord;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const TABLE_HEADER: [&str; 5] = ["parcel_id", "current_assessment", "land_area", "shape_area", "base_flood"];

pub fn read_eda_table<T: Scalar, R: Read>(reader: R) -> Result<Vec<EdaRecord<T>>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    for key in TABLE_HEADER {
        if !headers.iter().any(|h| h == key) {
            return Err(Error::parse(1, 1, format!("attribute table is missing column '{key}'")));
        }
    }
    let mut out = Vec::new();
    for row in rdr.deserialize::<EdaRecord<T>>() {
        let rec = row.map_err(csv_error)?;
        rec.validate()?;
        out.push(rec);
    }
    Ok(out)
}

fn csv_error(e: csv::Error) -> Error {
    match e.position() {
        Some(pos) => Error::parse(pos.line() as usize, 1, format!("attribute table: {e}")),
        None => Error::Format(format!("attribute table: {e}")),
    }
}
