//! `floodgrid` command-line entry point.
//!
//! Exit codes: 0 success, 1 input/parse failure, 2 configuration error,
//! 3 nothing to analyse.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use floodgrid::pipeline::{self, RunConfig, THREADS_ENV};
use floodgrid::{make_fishnet, AreaBasis, Error, Rect};

#[derive(Parser)]
#[command(name = "floodgrid", version, about = "Grid-based coastal flood risk assessment")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the fishnet covering a bounding box as JSON.
    Fishnet {
        /// xmin,ymin,xmax,ymax in feet
        #[arg(long, value_parser = parse_bbox, allow_hyphen_values = true)]
        bbox: Rect,
        #[arg(long, default_value_t = 98.0)]
        cell_size: f64,
    },
    /// Run the flood-risk pipeline described by a JSON config.
    Assess {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated sea level rise increments in feet; overrides the config.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        slr: Option<Vec<f64>>,
        /// Flooded-area accounting: parcel or cell; overrides the config.
        #[arg(long)]
        area_basis: Option<String>,
    },
    /// Exploratory analysis of a parcel attribute table.
    Eda {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_bbox(s: &str) -> Result<Rect, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}")))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        &[xmin, ymin, xmax, ymax] => Ok(Rect::new(xmin, ymin, xmax, ymax)),
        _ => Err(format!("expected 4 comma-separated numbers, got {}", v.len())),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e.root() {
        Error::Config(_) => 2,
        Error::Empty(_) | Error::DegenerateRegressor => 3,
        _ => 1,
    }
}

fn threads_from_env() -> Result<Option<usize>, Error> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n >= 1)
            .map(Some)
            .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got '{v}'"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Fishnet { bbox, cell_size } => {
            let grid = make_fishnet(bbox, cell_size).map_err(|e| Error::Config(e.to_string()))?;
            println!("{}", grid.to_json());
        }
        Command::Assess { config, slr, area_basis } => {
            let mut cfg = RunConfig::from_file(&config)?;
            if let Some(slr) = slr {
                cfg.slr_list = slr;
            }
            if let Some(basis) = area_basis {
                cfg.area_basis = basis.parse::<AreaBasis>()?;
            }
            let out = pipeline::assess(&cfg, threads_from_env()?)?;
            for r in &out.results {
                log::info!("slr {} ft: damage {:.2} USD, flooded {} ft²", r.slr, r.total_damage, r.total_flooded_area);
            }
            for f in &out.files {
                println!("{}", f.display());
            }
        }
        Command::Eda { table, out } => {
            let report = pipeline::run_eda(&table, &out)?;
            let c = report.stage_counts;
            eprintln!(
                "stages: {} -> {} -> {} -> {} -> {} -> {} (after outliers)",
                c.input,
                c.assessment_over_10000,
                c.price_per_sqft_over_1,
                c.base_flood_positive,
                c.area_cost_positive,
                c.after_outliers
            );
            println!("{}", out.join("eda_report.json").display());
            println!("{}", out.join("scatter.csv").display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
