//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use floodgrid::grid::GridSpec;
use floodgrid::io::{Parcel, Raster};
use floodgrid::overlay::{Point, Rect};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn parcel(id: &str, outer: Vec<Point<f64>>, holes: Vec<Vec<Point<f64>>>, value: f64) -> Parcel<f64> {
    Parcel {
        parcel_id: id.to_string(),
        outer_ring: outer,
        holes,
        current_assessment: value,
        land_area: 0.0,
        base_flood: 0.0,
        group: None,
    }
}

pub fn rect_ring(x0: f64, y0: f64, x1: f64, y1: f64) -> Vec<Point<f64>> {
    vec![Point::new(x0, y0), Point::new(x1, y0), Point::new(x1, y1), Point::new(x0, y1)]
}

fn rotate(p: (f64, f64), c: (f64, f64), theta: f64) -> Point<f64> {
    let (s, co) = theta.sin_cos();
    let (dx, dy) = (p.0 - c.0, p.1 - c.1);
    Point::new(c.0 + dx * co - dy * s, c.1 + dx * s + dy * co)
}

/// Convex polygon: sorted random angles on an ellipse.
pub fn convex_ring(r: &mut impl Rng, cx: f64, cy: f64, rx: f64, ry: f64) -> Vec<Point<f64>> {
    let n = r.random_range(3..12);
    let mut angles: Vec<f64> = (0..n).map(|_| r.random_range(0.0..std::f64::consts::TAU)).collect();
    angles.sort_by(f64::total_cmp);
    angles.dedup();
    if angles.len() < 3 {
        angles = vec![0.0, 2.1, 4.2];
    }
    angles.iter().map(|a| Point::new(cx + rx * a.cos(), cy + ry * a.sin())).collect()
}

/// L shape inscribed in a `w` x `h` box centred at `(cx, cy)`, rotated.
pub fn l_ring(r: &mut impl Rng, cx: f64, cy: f64, w: f64, h: f64) -> Vec<Point<f64>> {
    let a = w * r.random_range(0.2..0.8);
    let b = h * r.random_range(0.2..0.8);
    let (x0, y0) = (cx - w / 2.0, cy - h / 2.0);
    let pts = [(x0, y0), (x0 + w, y0), (x0 + w, y0 + b), (x0 + a, y0 + b), (x0 + a, y0 + h), (x0, y0 + h)];
    let theta = if r.random_bool(0.5) { 0.0 } else { r.random_range(0.0..std::f64::consts::TAU) };
    pts.iter().map(|&p| rotate(p, (cx, cy), theta)).collect()
}

/// Star-shaped simple polygon around `(cx, cy)` with radii in `[rmin, rmax]`.
pub fn star_ring(r: &mut impl Rng, cx: f64, cy: f64, rmin: f64, rmax: f64) -> Vec<Point<f64>> {
    let n = r.random_range(5..16);
    let step = std::f64::consts::TAU / n as f64;
    (0..n)
        .map(|k| {
            let a = step * (k as f64 + r.random_range(0.05..0.95));
            let rad = r.random_range(rmin..rmax);
            Point::new(cx + rad * a.cos(), cy + rad * a.sin())
        })
        .collect()
}

pub fn random_grid(r: &mut impl Rng) -> GridSpec<f64> {
    let size = r.random_range(5.0..60.0);
    GridSpec::new(
        r.random_range(-5_000.0..5_000.0),
        r.random_range(-5_000.0..5_000.0),
        size,
        r.random_range(3..10),
        r.random_range(3..10),
    )
    .unwrap()
}

/// A random simple parcel (convex, L-shaped, or star with an optional hole)
/// lying fully inside the grid extent.
pub fn random_parcel_inside(r: &mut impl Rng, g: &GridSpec<f64>, id: &str) -> Parcel<f64> {
    let ext = g.extent();
    let maxr = (ext.width().min(ext.height()) / 2.0) * 0.95;
    let rad = r.random_range(maxr * 0.1..maxr);
    let cx = r.random_range(ext.xmin + rad..ext.xmax - rad);
    let cy = r.random_range(ext.ymin + rad..ext.ymax - rad);
    let value = r.random_range(1_000.0..2_000_000.0);
    match r.random_range(0..3) {
        0 => {
            let ry = rad * r.random_range(0.3..1.0);
            parcel(id, convex_ring(r, cx, cy, rad, ry), vec![], value)
        }
        1 => {
            let side = rad * std::f64::consts::SQRT_2 * 0.99;
            let h = side * r.random_range(0.4..1.0);
            parcel(id, l_ring(r, cx, cy, side, h), vec![], value)
        }
        _ => {
            let outer = star_ring(r, cx, cy, rad * 0.5, rad);
            let holes = if r.random_bool(0.5) {
                let h = rad * 0.2;
                vec![rect_ring(cx - h, cy - h, cx + h, cy + h)]
            } else {
                vec![]
            };
            parcel(id, outer, holes, value)
        }
    }
}

/// Even-odd crossing test written independently of the library.
pub fn contains(rings: &[&[Point<f64>]], x: f64, y: f64) -> bool {
    let mut inside = false;
    for ring in rings {
        for i in 0..ring.len() {
            let a = ring[i];
            let b = ring[(i + 1) % ring.len()];
            if (a.y <= y) != (b.y <= y) {
                let t = (y - a.y) / (b.y - a.y);
                if x < a.x + t * (b.x - a.x) {
                    inside = !inside;
                }
            }
        }
    }
    inside
}

pub type CellEstimate = ((usize, usize), f64);

/// Monte Carlo estimate of the parcel area inside each grid cell: `samples`
/// uniform points over the parcel bounding box, binned by brute-force cell
/// bounds. Returns (row, col, estimated area) and the sampled-region area.
pub fn monte_carlo_cell_areas(
    p: &Parcel<f64>,
    g: &GridSpec<f64>,
    samples: usize,
    seed: u64,
) -> (Vec<CellEstimate>, f64) {
    let mut r = rng(seed);
    let xs: Vec<f64> = p.outer_ring.iter().map(|q| q.x).collect();
    let ys: Vec<f64> = p.outer_ring.iter().map(|q| q.y).collect();
    let (x0, x1) = (xs.iter().cloned().fold(f64::INFINITY, f64::min), xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
    let (y0, y1) = (ys.iter().cloned().fold(f64::INFINITY, f64::min), ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
    let region = (x1 - x0) * (y1 - y0);
    let rings: Vec<&[Point<f64>]> =
        std::iter::once(p.outer_ring.as_slice()).chain(p.holes.iter().map(Vec::as_slice)).collect();
    let mut hits = vec![0usize; g.n_cells()];
    for _ in 0..samples {
        let x = r.random_range(x0..x1);
        let y = r.random_range(y0..y1);
        if !contains(&rings, x, y) {
            continue;
        }
        let col = ((x - g.origin_x) / g.cell_size).floor();
        let row = ((y - g.origin_y) / g.cell_size).floor();
        if col < 0.0 || row < 0.0 || col >= g.n_cols as f64 || row >= g.n_rows as f64 {
            continue;
        }
        hits[row as usize * g.n_cols + col as usize] += 1;
    }
    let est = hits
        .iter()
        .enumerate()
        .map(|(k, &h)| ((k / g.n_cols, k % g.n_cols), h as f64 / samples as f64 * region))
        .collect();
    (est, region)
}

/// Zonal mean by enumerating, for every fishnet cell, every DEM pixel centre.
pub fn brute_force_zonal(dem: &Raster<f64>, g: &GridSpec<f64>) -> Vec<Option<f64>> {
    let mut out = Vec::with_capacity(g.n_cells());
    for row in 0..g.n_rows {
        for col in 0..g.n_cols {
            let rect = g.cell_rect(row, col).unwrap();
            let (mut sum, mut n) = (0.0, 0usize);
            for pr in 0..dem.nrows {
                for pc in 0..dem.ncols {
                    let v = dem.values[pr * dem.ncols + pc];
                    if v == dem.nodata_value {
                        continue;
                    }
                    let c = dem.cell_center(pr, pc);
                    let in_x = rect.xmin <= c.x && (c.x < rect.xmax || (col == g.n_cols - 1 && c.x == rect.xmax));
                    let in_y = rect.ymin <= c.y && (c.y < rect.ymax || (row == g.n_rows - 1 && c.y == rect.ymax));
                    if in_x && in_y {
                        sum += v;
                        n += 1;
                    }
                }
            }
            out.push((n > 0).then(|| sum / n as f64));
        }
    }
    out
}

/// Randomised DEM/grid pair, sometimes with pixel centres exactly on cell
/// edges and with scattered NODATA.
pub fn random_dem_and_grid(r: &mut impl Rng) -> (Raster<f64>, GridSpec<f64>) {
    let aligned = r.random_bool(0.5);
    let cs = if aligned { 2.0 } else { r.random_range(0.5..7.0) };
    let ncols = r.random_range(1..60);
    let nrows = r.random_range(1..60);
    let xll = if aligned { 100.0 } else { r.random_range(-500.0..500.0) };
    let yll = if aligned { -40.0 } else { r.random_range(-500.0..500.0) };
    let values = (0..ncols * nrows)
        .map(|_| if r.random_bool(0.1) { -9999.0 } else { r.random_range(-20.0..80.0) })
        .collect();
    let dem = Raster::new(ncols, nrows, xll, yll, cs, -9999.0, values).unwrap();
    let grid = if aligned {
        // centres sit at odd coordinates; an odd origin puts some on edges
        GridSpec::new(101.0, -39.0, 2.0 * r.random_range(1..8) as f64, r.random_range(1..20), r.random_range(1..20)).unwrap()
    } else {
        GridSpec::new(
            xll + r.random_range(-30.0..30.0),
            yll + r.random_range(-30.0..30.0),
            r.random_range(1.0..40.0),
            r.random_range(1..15),
            r.random_range(1..15),
        )
        .unwrap()
    };
    (dem, grid)
}

/// Slope, intercept and R² from the raw-sum normal equations (Cramer's rule).
pub fn normal_equations(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let det = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / det;
    let intercept = (sxx * sy - sx * sxy) / det;
    let ybar = sy / n;
    let ss_tot: f64 = y.iter().map(|v| (v - ybar).powi(2)).sum();
    let ss_res: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    (slope, intercept, 1.0 - ss_res / ss_tot)
}

/// `y = 5x + e`, `x ~ U[1, 100]`, `e ~ N(0, sd)` with `sd = 0.5 x` (funnel)
/// or `sd = 25` (constant).
pub fn funnel_fixture(seed: u64, n: usize, funnel: bool) -> (Vec<f64>, Vec<f64>) {
    let mut r = rng(seed);
    let std_normal = Normal::new(0.0, 1.0).unwrap();
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for _ in 0..n {
        let xi: f64 = r.random_range(1.0..100.0);
        let sd = if funnel { 0.5 * xi } else { 25.0 };
        x.push(xi);
        y.push(5.0 * xi + sd * std_normal.sample(&mut r));
    }
    (x, y)
}

pub const FUNNEL_SEED: u64 = 20_240_601;
pub const FLAT_SEED: u64 = 20_240_602;

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

#[allow(unused)]
pub fn rect_of(g: &GridSpec<f64>, row: usize, col: usize) -> Rect<f64> {
    g.cell_rect(row, col).unwrap()
}

/// Files of a synthetic tilted-plane coast written to disk.
pub struct PlaneFixture {
    pub config: floodgrid::pipeline::RunConfig,
}

pub struct PlaneSpec {
    pub width: f64,
    pub height: f64,
    pub pixel: f64,
    pub slope: f64,
    /// Parcels per row and column of the tiling.
    pub parcels: (usize, usize),
    /// Max lattice jitter as a fraction of the parcel size (0 = exact tiling).
    pub jitter: f64,
    /// Elevation noise amplitude and NODATA probability.
    pub noise: f64,
    pub nodata: f64,
    /// (polygon, bfe) zones in priority order; `None` = one zone covering all.
    pub zones: Vec<(Rect<f64>, f64)>,
    pub seed: u64,
}

/// DEM `z = slope * x (+ noise)` with pixel-centre sampling, a lattice
/// tiling of parcels, BFE zones and a linear 0-10 ft damage curve.
pub fn write_plane_fixture(dir: &std::path::Path, spec: &PlaneSpec) -> PlaneFixture {
    use std::fmt::Write as _;
    let mut r = rng(spec.seed);
    let ncols = (spec.width / spec.pixel).round() as usize;
    let nrows = (spec.height / spec.pixel).round() as usize;
    let mut dem = String::with_capacity(ncols * nrows * 8);
    let _ = write!(dem, "ncols {ncols}\nnrows {nrows}\nxllcorner 0\nyllcorner 0\ncellsize {}\nnodata_value -9999\n", spec.pixel);
    for _ in 0..nrows {
        for c in 0..ncols {
            if c > 0 {
                dem.push(' ');
            }
            let x = (c as f64 + 0.5) * spec.pixel;
            let mut z = spec.slope * x;
            if spec.noise > 0.0 {
                z += r.random_range(-spec.noise..spec.noise);
            }
            if spec.nodata > 0.0 && r.random_bool(spec.nodata) {
                z = -9999.0;
            }
            let _ = write!(dem, "{z}");
        }
        dem.push('\n');
    }

    let (nx, ny) = spec.parcels;
    let (pw, ph) = (spec.width / nx as f64, spec.height / ny as f64);
    let mut lattice = vec![vec![(0.0, 0.0); nx + 1]; ny + 1];
    for (j, row) in lattice.iter_mut().enumerate() {
        for (i, p) in row.iter_mut().enumerate() {
            let interior = i > 0 && i < nx && j > 0 && j < ny;
            let (jx, jy) = if interior && spec.jitter > 0.0 {
                (r.random_range(-spec.jitter..spec.jitter) * pw, r.random_range(-spec.jitter..spec.jitter) * ph)
            } else {
                (0.0, 0.0)
            };
            *p = (i as f64 * pw + jx, j as f64 * ph + jy);
        }
    }
    let mut features = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let q = [lattice[j][i], lattice[j][i + 1], lattice[j + 1][i + 1], lattice[j + 1][i], lattice[j][i]];
            let coords: Vec<String> = q.iter().map(|(x, y)| format!("[{x:?},{y:?}]")).collect();
            let value = r.random_range(50_000.0..2_000_000.0_f64).round();
            features.push(format!(
                r#"{{"type":"Feature","geometry":{{"type":"Polygon","coordinates":[[{}]]}},"properties":{{"parcel_id":"P{j:03}_{i:03}","current_assessment":{value:?},"land_area":{:?}}}}}"#,
                coords.join(","),
                pw * ph
            ));
        }
    }
    let parcels = format!(r#"{{"type":"FeatureCollection","features":[{}]}}"#, features.join(","));

    let zones: Vec<String> = spec
        .zones
        .iter()
        .map(|(z, bfe)| {
            format!(
                r#"{{"type":"Feature","geometry":{{"type":"Polygon","coordinates":[[[{x0:?},{y0:?}],[{x1:?},{y0:?}],[{x1:?},{y1:?}],[{x0:?},{y1:?}],[{x0:?},{y0:?}]]]}},"properties":{{"static_bfe":{bfe:?}}}}}"#,
                x0 = z.xmin, y0 = z.ymin, x1 = z.xmax, y1 = z.ymax
            )
        })
        .collect();
    let bfe = format!(r#"{{"type":"FeatureCollection","features":[{}]}}"#, zones.join(","));

    std::fs::create_dir_all(dir).unwrap();
    std::fs::write(dir.join("dem.asc"), dem).unwrap();
    std::fs::write(dir.join("parcels.geojson"), parcels).unwrap();
    std::fs::write(dir.join("bfe.geojson"), bfe).unwrap();
    std::fs::write(dir.join("curve.json"), "[[0,0],[10,1]]").unwrap();
    PlaneFixture {
        config: floodgrid::pipeline::RunConfig {
            dem_path: dir.join("dem.asc"),
            parcels_path: dir.join("parcels.geojson"),
            bfe_path: dir.join("bfe.geojson"),
            damage_curve_path: dir.join("curve.json"),
            cell_size: 98.0,
            slr_list: vec![0.0, 1.0, 2.0, 3.0],
            area_basis: floodgrid::AreaBasis::Parcel,
            output_dir: dir.join("out"),
        },
    }
}
