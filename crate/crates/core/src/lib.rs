//! Grid-based coastal flood risk assessment.
//!
//! Parcels are intersected with a square fishnet and their assessed values
//! spread over cells by area. Each cell gets a mean ground elevation from a
//! DEM and a base flood elevation from regulatory zones; the difference,
//! raised by a sea-level-rise increment, is the flood depth that a
//! depth-damage curve turns into cost. An exploratory-analysis module fits
//! and diagnoses the area-cost relationship of the attribute table.
//!
//! All numeric kernels are generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.

// `!(a > b)` is used deliberately so NaN inputs fall on the rejecting side.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod damage;
pub mod eda;
pub mod error;
pub mod grid;
pub mod io;
pub mod overlay;
pub mod pipeline;
pub mod scalar;
pub mod scenario;
pub mod terrain;

pub use error::{Error, Location, Result};
pub use grid::{make_fishnet, CellIndex};
pub use scalar::Scalar;
pub use scenario::AreaBasis;

pub type Point = overlay::Point<f64>;
pub type Rect = overlay::Rect<f64>;
pub type GridSpec = grid::GridSpec<f64>;
pub type Raster = io::Raster<f64>;
pub type Parcel = io::Parcel<f64>;
pub type BfeZone = io::BfeZone<f64>;
pub type DamageCurve = io::DamageCurve<f64>;
pub type CellAttribution = overlay::CellAttribution<f64>;
pub type CellState = terrain::CellState<f64>;
pub type ScenarioResult = scenario::ScenarioResult<f64>;
pub type EdaRecord = eda::EdaRecord<f64>;
pub type EdaReport = eda::EdaReport<f64>;

pub type RasterF32 = io::Raster<f32>;
pub type GridSpecF32 = grid::GridSpec<f32>;
