//! Readers and writers for every external file format.

pub mod ascii_grid;
pub mod curve;
pub mod geojson;
pub mod report;
pub mod table;

pub use ascii_grid::{parse_ascii_grid, write_ascii_grid, Raster};
pub use curve::{parse_damage_curve, DamageCurve};
pub use geojson::{parse_bfe_zones, parse_parcels, write_flood_geojson, BfeZone, Parcel, ParcelGroup};
pub use report::{write_report, REPORT_HEADER};
pub use table::read_eda_table;
