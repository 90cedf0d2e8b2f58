mod common;

use common::{brute_force_zonal, random_dem_and_grid, rng};
use floodgrid::grid::CellIndex;
use floodgrid::io::DamageCurve;
use floodgrid::scenario::{run_scenario, AreaBasis};
use floodgrid::terrain::{flood_depth, zonal_mean_elevation, CellState};
use proptest::prelude::*;

#[test]
fn zonal_mean_equals_brute_force() {
    let mut r = rng(5);
    for _ in 0..100 {
        let (dem, grid) = random_dem_and_grid(&mut r);
        assert_eq!(zonal_mean_elevation(&dem, &grid), brute_force_zonal(&dem, &grid));
    }
}

#[test]
fn zonal_mean_within_sample_range() {
    let mut r = rng(6);
    for _ in 0..50 {
        let (dem, grid) = random_dem_and_grid(&mut r);
        let means = zonal_mean_elevation(&dem, &grid);
        for cell in grid.cells() {
            let Some(m) = means[grid.linear(cell)] else { continue };
            let samples: Vec<f64> = (0..dem.nrows)
                .flat_map(|pr| (0..dem.ncols).map(move |pc| (pr, pc)))
                .filter(|&(pr, pc)| grid.locate(dem.cell_center(pr, pc)) == Some(cell))
                .filter_map(|(pr, pc)| dem.get(pr, pc))
                .collect();
            let lo = samples.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            assert!(m >= lo && m <= hi, "{m} outside [{lo}, {hi}]");
        }
    }
}

#[test]
fn disjoint_extents_are_all_absent() {
    let dem = floodgrid::io::Raster::new(3, 3, 0.0, 0.0, 1.0, -9999.0, vec![1.0; 9]).unwrap();
    let grid = floodgrid::grid::GridSpec::new(100.0, 100.0, 5.0, 2, 2).unwrap();
    assert!(zonal_mean_elevation(&dem, &grid).iter().all(Option::is_none));
}

proptest! {
    #[test]
    fn depth_has_unit_slope(bfe in -2048i32..2048, elev in -2048i32..2048, slr in 0i32..64) {
        // quantised to 1/64 ft so every sum is exact
        let (b, e, s) = (bfe as f64 / 64.0, elev as f64 / 64.0, slr as f64 / 8.0);
        prop_assert_eq!(flood_depth(b, s + 1.0, e) - flood_depth(b, s, e), 1.0);
        prop_assert!(flood_depth(b, s + 1.0, e) > flood_depth(b, s, e));
    }

    #[test]
    fn missing_inputs_never_flood(elev in proptest::option::of(-10.0f64..10.0),
                                  bfe in proptest::option::of(-10.0f64..10.0), slr in 0.0f64..50.0) {
        prop_assume!(elev.is_none() || bfe.is_none());
        let cells = vec![CellState {
            cell: CellIndex::new(0, 0),
            mean_elevation: elev,
            bfe,
            exposed_value: 1e6,
            exposed_area: 100.0,
            cell_area: 100.0,
        }];
        let curve = DamageCurve::new(vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
        let r = run_scenario(&cells, &curve, slr, AreaBasis::Cell);
        prop_assert_eq!((r.total_damage, r.total_flooded_area), (0.0, 0.0));
    }
}
