//! End-to-end runs behind the `assess` and `eda` commands.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{make_fishnet, GridSpec};
use crate::io::{
    parse_ascii_grid, parse_bfe_zones, parse_damage_curve, parse_parcels, read_eda_table, write_flood_geojson,
    write_report, Parcel,
};
use crate::overlay::{apportion_all, Rect};
use crate::scenario::{sweep, validate_slr_list, AreaBasis, ScenarioResult, DEFAULT_SLR_FT};
use crate::terrain::{assign_bfe, build_cell_states, cells_csv, zonal_mean_elevation};
use crate::eda::{self, EdaReport};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "FLOODGRID_THREADS";

fn default_cell_size() -> f64 {
    98.0
}

fn default_slr() -> Vec<f64> {
    DEFAULT_SLR_FT.to_vec()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub dem_path: PathBuf,
    pub parcels_path: PathBuf,
    pub bfe_path: PathBuf,
    pub damage_curve_path: PathBuf,
    #[serde(default = "default_cell_size")]
    pub cell_size: f64,
    #[serde(default = "default_slr")]
    pub slr_list: Vec<f64>,
    #[serde(default)]
    pub area_basis: AreaBasis,
    pub output_dir: PathBuf,
}

impl RunConfig {
    /// Loads a JSON config; relative paths resolve against the config file's
    /// directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = read(path)?;
        let mut cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| Error::parse(e.line(), e.column(), format!("run config: {e}")).in_file(path))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [
            &mut cfg.dem_path,
            &mut cfg.parcels_path,
            &mut cfg.bfe_path,
            &mut cfg.damage_curve_path,
            &mut cfg.output_dir,
        ] {
            if p.is_relative() && !p.as_os_str().is_empty() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let named = [
            ("dem_path", &self.dem_path),
            ("parcels_path", &self.parcels_path),
            ("bfe_path", &self.bfe_path),
            ("damage_curve_path", &self.damage_curve_path),
            ("output_dir", &self.output_dir),
        ];
        for (name, p) in named {
            if p.as_os_str().is_empty() {
                return Err(Error::Config(format!("{name} is empty")));
            }
        }
        if !(self.cell_size > 0.0) || !self.cell_size.is_finite() {
            return Err(Error::Config(format!("cell_size must be positive, got {}", self.cell_size)));
        }
        validate_slr_list(&self.slr_list)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn load<V>(path: &Path, parse: impl FnOnce(&str) -> Result<V>) -> Result<V> {
    parse(&read(path)?).map_err(|e| e.in_file(path))
}

/// Output file name for one scenario, e.g. `flood_0.geojson`, `flood_0.5.geojson`.
pub fn flood_file_name(slr: f64) -> String {
    format!("flood_{slr}.geojson")
}

#[derive(Debug, Clone)]
pub struct AssessOutput {
    pub grid: GridSpec<f64>,
    pub results: Vec<ScenarioResult<f64>>,
    pub files: Vec<PathBuf>,
}

/// Runs `f` on a pool of `threads` workers, or on the global pool.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

fn study_area(parcels: &[Parcel<f64>]) -> Option<Rect<f64>> {
    parcels.iter().map(Parcel::bounds).reduce(|a, b| a.union(&b))
}

/// Full flood-risk pipeline: fishnet over the parcel extent, value
/// apportionment, zonal elevation, BFE assignment and the scenario sweep.
/// Outputs are staged in a temporary directory and renamed into
/// `output_dir` only after everything has been written.
pub fn assess(config: &RunConfig, threads: Option<usize>) -> Result<AssessOutput> {
    config.validate()?;
    let dem = load(&config.dem_path, parse_ascii_grid::<f64>)?;
    let parcels = load(&config.parcels_path, parse_parcels::<f64>)?;
    let zones = load(&config.bfe_path, parse_bfe_zones::<f64>)?;
    let curve = load(&config.damage_curve_path, parse_damage_curve::<f64>)?;
    log::info!("loaded {}x{} DEM, {} parcels, {} BFE zones", dem.ncols, dem.nrows, parcels.len(), zones.len());

    let bbox = study_area(&parcels).ok_or_else(|| Error::Empty("no parcels in input".into()))?;
    let grid = make_fishnet(bbox, config.cell_size).map_err(|e| Error::Empty(format!("empty grid: {e}")))?;
    log::info!("fishnet {}x{} cells of {} ft", grid.n_cols, grid.n_rows, grid.cell_size);

    let (states, results) = with_threads(threads, || -> Result<_> {
        let attributions = apportion_all(&parcels, &grid)?;
        let elevations = zonal_mean_elevation(&dem, &grid);
        let bfes = assign_bfe(&grid, &zones);
        let states = build_cell_states(&grid, &elevations, &bfes, &attributions);
        let results = sweep(&states, &curve, &config.slr_list, config.area_basis)?;
        Ok((states, results))
    })??;

    let mut outputs: Vec<(String, String)> = vec![
        ("report.csv".into(), write_report(&results)?),
        ("cells.csv".into(), cells_csv(&states)),
    ];
    for r in &results {
        outputs.push((flood_file_name(r.slr), write_flood_geojson(&grid, r)));
    }
    let files = commit_outputs(&config.output_dir, &outputs)?;
    Ok(AssessOutput { grid, results, files })
}

/// Attribute-table analysis; writes `eda_report.json` and `scatter.csv`.
pub fn run_eda(table_path: &Path, output_dir: &Path) -> Result<EdaReport<f64>> {
    let file = fs::File::open(table_path).map_err(|source| Error::Io { path: table_path.to_path_buf(), source })?;
    let records = read_eda_table::<f64, _>(std::io::BufReader::new(file)).map_err(|e| e.in_file(table_path))?;
    let (report, kept) = eda::analyze(&records)?;
    let outputs = vec![
        ("eda_report.json".to_string(), report.to_json()),
        ("scatter.csv".to_string(), eda::scatter_export(&kept)?),
    ];
    commit_outputs(output_dir, &outputs)?;
    Ok(report)
}

fn commit_outputs(dir: &Path, outputs: &[(String, String)]) -> Result<Vec<PathBuf>> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| Error::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    let staging = tempfile::Builder::new().prefix(".floodgrid-").tempdir_in(dir).map_err(io(dir))?;
    for (name, body) in outputs {
        let p = staging.path().join(name);
        fs::write(&p, body).map_err(io(&p))?;
    }
    let mut written = Vec::with_capacity(outputs.len());
    for (name, _) in outputs {
        let target = dir.join(name);
        fs::rename(staging.path().join(name), &target).map_err(io(&target))?;
        written.push(target);
    }
    Ok(written)
}
