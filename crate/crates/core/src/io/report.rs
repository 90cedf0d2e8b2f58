use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::io::geojson::cents;
use crate::scalar::Scalar;
use crate::scenario::ScenarioResult;

pub const REPORT_HEADER: &str = "scenario,total_flooding_usd,total_area_flooded_sqft,cost_pct_delta,area_pct_delta";

fn scenario_label<T: Scalar>(index: usize, slr: T) -> String {
    if index == 0 {
        "base_flood".to_string()
    } else {
        format!("sea_level_{slr}ft")
    }
}

fn pct<T: Scalar>(delta: Option<T>) -> String {
    delta.map(|d| format!("{:.2}", d.as_f64() * 100.0)).unwrap_or_default()
}

/// Scenario summary CSV. Both delta columns are printed as percentages
/// with two decimals; the base row leaves them blank.
pub fn write_report<T: Scalar>(results: &[ScenarioResult<T>]) -> Result<String> {
    if results.is_empty() {
        return Err(Error::invalid("report needs at least one scenario"));
    }
    if results.windows(2).any(|w| !(w[1].slr > w[0].slr)) {
        return Err(Error::invalid("scenarios must be ascending in sea level rise"));
    }
    let mut out = String::new();
    out.push_str(REPORT_HEADER);
    out.push('\n');
    for (i, r) in results.iter().enumerate() {
        let (cost, area) = if i == 0 {
            (String::new(), String::new())
        } else {
            (pct(r.cost_pct_delta), pct(r.area_pct_delta))
        };
        let _ = writeln!(
            out,
            "{},{:.2},{},{},{}",
            scenario_label(i, r.slr),
            cents(r.total_damage.as_f64()),
            r.total_flooded_area,
            cost,
            area
        );
    }
    Ok(out)
}
