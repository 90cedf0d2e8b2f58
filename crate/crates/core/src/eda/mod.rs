//! Exploratory analysis of the parcel attribute table: value filters, area
//! cost, outlier removal, regression and heteroskedasticity diagnosis.

pub mod stats;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use stats::{breusch_pagan, ols_fit, tukey_outlier_mask, BreuschPagan, OlsFit, CHI2_1DF_5PCT};

/// Minimum assessed value (USD, exclusive).
pub const MIN_ASSESSMENT: f64 = 10_000.0;
/// Minimum assessed value per square foot of land (USD/ft², exclusive).
pub const MIN_PRICE_PER_SQFT: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdaRecord<T> {
    pub parcel_id: String,
    pub current_assessment: T,
    pub land_area: T,
    pub shape_area: T,
    pub base_flood: T,
}

impl<T: Scalar> EdaRecord<T> {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.current_assessment, self.land_area, self.shape_area, self.base_flood]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::invalid(format!("record '{}' has a non-finite field", self.parcel_id)));
        }
        Ok(())
    }
}

/// `shape_area / land_area * current_assessment`.
pub fn area_cost<T: Scalar>(r: &EdaRecord<T>) -> Result<T> {
    if !(r.land_area > T::zero()) {
        return Err(Error::invalid(format!(
            "undefined area cost for '{}': land_area {} is not positive",
            r.parcel_id, r.land_area
        )));
    }
    Ok(r.shape_area / r.land_area * r.current_assessment)
}

/// Survivors after each stage, in application order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct StageCounts {
    pub input: usize,
    pub assessment_over_10000: usize,
    pub price_per_sqft_over_1: usize,
    pub base_flood_positive: usize,
    pub area_cost_positive: usize,
    pub after_outliers: usize,
}

/// Applies the four value filters in order and returns survivors with the
/// counts filled through `area_cost_positive` (`after_outliers` mirrors it).
pub fn filter_records<T: Scalar>(rs: &[EdaRecord<T>]) -> (Vec<EdaRecord<T>>, StageCounts) {
    let min_value = T::lit(MIN_ASSESSMENT);
    let min_price = T::lit(MIN_PRICE_PER_SQFT);
    let mut counts = StageCounts { input: rs.len(), ..Default::default() };

    let kept: Vec<&EdaRecord<T>> = rs.iter().filter(|r| r.current_assessment > min_value).collect();
    counts.assessment_over_10000 = kept.len();
    let kept: Vec<_> = kept
        .into_iter()
        .filter(|r| r.land_area > T::zero() && r.current_assessment / r.land_area > min_price)
        .collect();
    counts.price_per_sqft_over_1 = kept.len();
    let kept: Vec<_> = kept.into_iter().filter(|r| r.base_flood > T::zero()).collect();
    counts.base_flood_positive = kept.len();
    let kept: Vec<EdaRecord<T>> = kept
        .into_iter()
        .filter(|r| area_cost(r).is_ok_and(|c| c > T::zero()))
        .cloned()
        .collect();
    counts.area_cost_positive = kept.len();
    counts.after_outliers = kept.len();
    (kept, counts)
}

/// Drops records flagged by Tukey fences on either area cost or shape area.
pub fn remove_outliers<T: Scalar>(rs: Vec<EdaRecord<T>>) -> Result<Vec<EdaRecord<T>>> {
    let costs = rs.iter().map(area_cost).collect::<Result<Vec<T>>>()?;
    let areas: Vec<T> = rs.iter().map(|r| r.shape_area).collect();
    let by_cost = tukey_outlier_mask(&costs)?;
    let by_area = tukey_outlier_mask(&areas)?;
    Ok(rs
        .into_iter()
        .zip(by_cost.into_iter().zip(by_area))
        .filter(|(_, (c, a))| !c && !a)
        .map(|(r, _)| r)
        .collect())
}

/// Plot-ready `parcel_id,shape_area,area_cost` rows in input order.
pub fn scatter_export<T: Scalar>(rs: &[EdaRecord<T>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Format(format!("scatter export: {e}"));
    w.write_record(["parcel_id", "shape_area", "area_cost"]).map_err(io)?;
    for r in rs {
        w.write_record([r.parcel_id.clone(), r.shape_area.to_string(), area_cost(r)?.to_string()])
            .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(format!("scatter export: {e}")))?;
    Ok(String::from_utf8(bytes).expect("utf8 csv"))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdaReport<T> {
    pub stage_counts: StageCounts,
    pub slope: T,
    pub intercept: T,
    pub r_squared: T,
    pub bp_statistic: T,
    pub heteroskedastic: bool,
}

impl<T: Scalar> EdaReport<T> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Full chain: filters, outlier removal, area-cost-on-shape-area fit and
/// Breusch-Pagan. Returns the report and the records behind the scatter.
///
/// Outlier fences need four values; with exactly three survivors the
/// outlier stage is skipped. Fewer than three is [`Error::Empty`].
pub fn analyze<T: Scalar>(rs: &[EdaRecord<T>]) -> Result<(EdaReport<T>, Vec<EdaRecord<T>>)> {
    let (kept, mut counts) = filter_records(rs);
    let kept = if kept.len() >= 4 { remove_outliers(kept)? } else { kept };
    counts.after_outliers = kept.len();
    log::info!(
        "eda stages: {} -> {} -> {} -> {} -> {} -> {}",
        counts.input,
        counts.assessment_over_10000,
        counts.price_per_sqft_over_1,
        counts.base_flood_positive,
        counts.area_cost_positive,
        counts.after_outliers
    );
    if kept.len() < 3 {
        return Err(Error::Empty(format!(
            "only {} records survive filtering; regression needs at least 3",
            kept.len()
        )));
    }
    let x: Vec<T> = kept.iter().map(|r| r.shape_area).collect();
    let y = kept.iter().map(area_cost).collect::<Result<Vec<T>>>()?;
    let fit = ols_fit(&x, &y)?;
    let bp = breusch_pagan(&x, &y)?;
    let report = EdaReport {
        stage_counts: counts,
        slope: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
        bp_statistic: bp.statistic,
        heteroskedastic: bp.heteroskedastic,
    };
    Ok((report, kept))
}
