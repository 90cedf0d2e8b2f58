//! GeoJSON subset: parcel and BFE-zone FeatureCollections in, flooded-cell
//! FeatureCollections out.
//!
//! Input rings follow GeoJSON and repeat their first vertex at the end; the
//! duplicate is dropped on read so in-memory rings are implicitly closed.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::overlay::geometry::{shoelace_area, signed_area, Point, Rect};
use crate::scalar::Scalar;
use crate::scenario::ScenarioResult;

/// Value pool shared by the members of a split MultiPolygon feature.
#[derive(Debug, Clone, PartialEq)]
pub struct ParcelGroup<T> {
    pub feature_id: String,
    /// Geometric area summed over all members of the feature.
    pub total_area: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Parcel<T> {
    pub parcel_id: String,
    pub outer_ring: Vec<Point<T>>,
    pub holes: Vec<Vec<Point<T>>>,
    pub current_assessment: T,
    pub land_area: T,
    pub base_flood: T,
    /// Set for members of a MultiPolygon feature.
    pub group: Option<ParcelGroup<T>>,
}

impl<T: Scalar> Parcel<T> {
    /// Outer ring area minus hole areas.
    pub fn geometric_area(&self) -> T {
        polygon_area(&self.outer_ring, &self.holes)
    }

    /// Area that the assessment is spread over: the whole feature's area for
    /// MultiPolygon members, this polygon's own area otherwise.
    pub fn value_basis_area(&self) -> T {
        self.group.as_ref().map_or_else(|| self.geometric_area(), |g| g.total_area)
    }

    pub fn bounds(&self) -> Rect<T> {
        Rect::bounding(&self.outer_ring).expect("parcel ring is non-empty")
    }

    pub fn rings(&self) -> Vec<&[Point<T>]> {
        std::iter::once(self.outer_ring.as_slice())
            .chain(self.holes.iter().map(Vec::as_slice))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BfeZone<T> {
    pub outer_ring: Vec<Point<T>>,
    pub holes: Vec<Vec<Point<T>>>,
    pub static_bfe: T,
}

impl<T: Scalar> BfeZone<T> {
    pub fn bounds(&self) -> Rect<T> {
        Rect::bounding(&self.outer_ring).expect("zone ring is non-empty")
    }

    pub fn contains(&self, p: Point<T>) -> bool {
        if !self.bounds().contains(p) {
            return false;
        }
        let rings: Vec<&[Point<T>]> = std::iter::once(self.outer_ring.as_slice())
            .chain(self.holes.iter().map(Vec::as_slice))
            .collect();
        crate::overlay::geometry::point_in_polygon(p, &rings)
    }
}

fn polygon_area<T: Scalar>(outer: &[Point<T>], holes: &[Vec<Point<T>>]) -> T {
    let holes: T = holes.iter().map(|h| signed_area(h).abs()).sum();
    signed_area(outer).abs() - holes
}

type Rings<T> = (Vec<Point<T>>, Vec<Vec<Point<T>>>);

struct Feature<'a> {
    index: usize,
    polygons: Vec<&'a Value>,
    multi: bool,
    properties: &'a Map<String, Value>,
}

fn parse_collection(text: &str) -> Result<Value> {
    let root: Value = serde_json::from_str(text).map_err(|e| {
        Error::parse(e.line(), e.column(), format!("invalid JSON: {e}"))
    })?;
    if root.get("type").and_then(Value::as_str) != Some("FeatureCollection") {
        return Err(Error::Format("expected a GeoJSON FeatureCollection".into()));
    }
    Ok(root)
}

fn collect_features(root: &Value) -> Result<Vec<Feature<'_>>> {
    let list = root
        .get("features")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Format("FeatureCollection has no 'features' array".into()))?;
    list.iter()
        .enumerate()
        .map(|(index, f)| {
            let geom = f
                .get("geometry")
                .filter(|g| !g.is_null())
                .ok_or_else(|| Error::Format(format!("feature {index}: missing geometry")))?;
            let kind = geom.get("type").and_then(Value::as_str).unwrap_or("<none>");
            let coords = geom
                .get("coordinates")
                .ok_or_else(|| Error::Format(format!("feature {index}: geometry has no coordinates")))?;
            let polygons = match kind {
                "Polygon" => vec![coords],
                "MultiPolygon" => coords
                    .as_array()
                    .ok_or_else(|| Error::Format(format!("feature {index}: MultiPolygon coordinates must be an array")))?
                    .iter()
                    .collect(),
                other => {
                    return Err(Error::Format(format!(
                        "feature {index}: non-polygon geometry '{other}'"
                    )))
                }
            };
            static EMPTY: std::sync::OnceLock<Map<String, Value>> = std::sync::OnceLock::new();
            let properties = match f.get("properties") {
                Some(Value::Object(m)) => m,
                _ => EMPTY.get_or_init(Map::new),
            };
            Ok(Feature { index, polygons, multi: kind == "MultiPolygon", properties })
        })
        .collect()
}

fn parse_point<T: Scalar>(v: &Value, feature: usize) -> Result<Point<T>> {
    let pair = v.as_array().filter(|a| a.len() >= 2);
    let num = |i: usize| pair.and_then(|a| a[i].as_f64()).and_then(T::from_f64);
    match (num(0), num(1)) {
        (Some(x), Some(y)) if x.is_finite() && y.is_finite() => Ok(Point::new(x, y)),
        _ => Err(Error::Format(format!("feature {feature}: invalid coordinate {v}"))),
    }
}

fn parse_ring<T: Scalar>(v: &Value, feature: usize) -> Result<Vec<Point<T>>> {
    let raw = v
        .as_array()
        .ok_or_else(|| Error::Format(format!("feature {feature}: ring must be an array")))?;
    let mut ring = raw.iter().map(|p| parse_point(p, feature)).collect::<Result<Vec<_>>>()?;
    if ring.len() > 1 && ring.first() == ring.last() {
        ring.pop();
    }
    if ring.len() < 3 {
        return Err(Error::Format(format!(
            "feature {feature}: ring with {} vertices, need at least 3",
            ring.len()
        )));
    }
    Ok(ring)
}

fn parse_polygon<T: Scalar>(v: &Value, feature: usize) -> Result<Rings<T>> {
    let rings = v
        .as_array()
        .filter(|r| !r.is_empty())
        .ok_or_else(|| Error::Format(format!("feature {feature}: polygon needs at least an outer ring")))?;
    let outer = parse_ring(&rings[0], feature)?;
    let holes = rings[1..].iter().map(|r| parse_ring(r, feature)).collect::<Result<Vec<_>>>()?;
    Ok((outer, holes))
}

fn number_prop<T: Scalar>(props: &Map<String, Value>, key: &str, feature: usize) -> Result<Option<T>> {
    match props.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_f64()
            .filter(|x| x.is_finite())
            .and_then(T::from_f64)
            .map(Some)
            .ok_or_else(|| Error::Format(format!("feature {feature}: property '{key}' must be a finite number"))),
    }
}

fn required<T: Scalar>(props: &Map<String, Value>, key: &str, feature: usize) -> Result<T> {
    number_prop(props, key, feature)?
        .ok_or_else(|| Error::Format(format!("feature {feature}: missing required property '{key}'")))
}

/// Reads parcels from a FeatureCollection of Polygon/MultiPolygon features
/// with properties `parcel_id`, `current_assessment`, `land_area` and
/// optional `base_flood`.
///
/// A MultiPolygon becomes one parcel per member, ids suffixed `#k`; members
/// keep the feature's full assessment and share it by area through
/// [`ParcelGroup`].
pub fn parse_parcels<T: Scalar>(text: &str) -> Result<Vec<Parcel<T>>> {
    let root = parse_collection(text)?;
    let mut out = Vec::new();
    for f in collect_features(&root)? {
        let i = f.index;
        let parcel_id = match f.properties.get("parcel_id") {
            Some(Value::String(s)) => s.clone(),
            Some(Value::Number(n)) => n.to_string(),
            _ => return Err(Error::Format(format!("feature {i}: missing required property 'parcel_id'"))),
        };
        let current_assessment: T = required(f.properties, "current_assessment", i)?;
        let land_area: T = required(f.properties, "land_area", i)?;
        let base_flood: T = number_prop(f.properties, "base_flood", i)?.unwrap_or_else(T::zero);
        if current_assessment < T::zero() || land_area < T::zero() {
            return Err(Error::Format(format!(
                "feature {i}: current_assessment and land_area must be non-negative"
            )));
        }

        let polys = f.polygons.iter().map(|p| parse_polygon::<T>(p, i)).collect::<Result<Vec<_>>>()?;
        let multi = f.multi;
        let group = multi.then(|| ParcelGroup {
            feature_id: parcel_id.clone(),
            total_area: polys.iter().map(|(o, h)| polygon_area(o, h)).sum(),
        });
        for (k, (outer_ring, holes)) in polys.into_iter().enumerate() {
            shoelace_area(&outer_ring)?;
            out.push(Parcel {
                parcel_id: if multi { format!("{parcel_id}#{k}") } else { parcel_id.clone() },
                outer_ring,
                holes,
                current_assessment,
                land_area,
                base_flood,
                group: group.clone(),
            });
        }
    }
    Ok(out)
}

/// Reads BFE zones (property `static_bfe`); MultiPolygon members become
/// separate zones with the same elevation, in input order.
pub fn parse_bfe_zones<T: Scalar>(text: &str) -> Result<Vec<BfeZone<T>>> {
    let root = parse_collection(text)?;
    let mut out = Vec::new();
    for f in collect_features(&root)? {
        let static_bfe: T = required(f.properties, "static_bfe", f.index)?;
        for p in &f.polygons {
            let (outer_ring, holes) = parse_polygon(p, f.index)?;
            out.push(BfeZone { outer_ring, holes, static_bfe });
        }
    }
    Ok(out)
}

pub(crate) fn cents(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

/// One square polygon per flooded cell with `row`, `col`, `slr`, `depth`
/// and `damage` (rounded to cents) properties.
pub fn write_flood_geojson<T: Scalar>(grid: &GridSpec<T>, result: &ScenarioResult<T>) -> String {
    let features: Vec<Value> = result
        .per_cell
        .iter()
        .map(|c| {
            let r = grid.rect_unchecked(c.cell.row, c.cell.col);
            let (x0, y0, x1, y1) = (r.xmin.as_f64(), r.ymin.as_f64(), r.xmax.as_f64(), r.ymax.as_f64());
            json!({
                "type": "Feature",
                "geometry": {
                    "type": "Polygon",
                    "coordinates": [[[x0, y0], [x1, y0], [x1, y1], [x0, y1], [x0, y0]]],
                },
                "properties": {
                    "row": c.cell.row,
                    "col": c.cell.col,
                    "slr": result.slr.as_f64(),
                    "depth": c.depth.as_f64(),
                    "damage": cents(c.damage.as_f64()),
                },
            })
        })
        .collect();
    let fc = json!({ "type": "FeatureCollection", "features": features });
    let mut s = serde_json::to_string(&fc).expect("geojson serializes");
    s.push('\n');
    s
}
