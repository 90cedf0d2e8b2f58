//! Depth-damage costing.
//!
//! Curves map depth (ft) to the damaged fraction of exposed value. The
//! bundled [`DEFAULT_CURVE_JSON`] is an UNCALIBRATED placeholder shaped like
//! published residential curves; supply a calibrated curve for real runs.

use crate::io::DamageCurve;
use crate::scalar::Scalar;
use crate::terrain::CellState;

/// Uncalibrated placeholder curve, `[[depth_ft, fraction], ...]`.
pub const DEFAULT_CURVE_JSON: &str = "[[0,0],[1,0.15],[2,0.22],[4,0.30],[6,0.40],[10,0.60]]";

/// Piecewise-linear interpolation, clamped to the end fractions outside the
/// breakpoint range.
pub fn evaluate_curve<T: Scalar>(curve: &DamageCurve<T>, depth: T) -> T {
    let bp = curve.breakpoints();
    let (d0, f0) = bp[0];
    let (dn, fn_) = bp[bp.len() - 1];
    if depth <= d0 {
        return f0;
    }
    if depth >= dn {
        return fn_;
    }
    // first breakpoint with depth > `depth`; exists because depth < dn
    let i = bp.partition_point(|&(d, _)| d <= depth);
    let (da, fa) = bp[i - 1];
    let (db, fb) = bp[i];
    let f = fa + (fb - fa) * (depth - da) / (db - da);
    f.max(fa).min(fb)
}

/// Damage in USD for one cell: zero unless flooded, never more than the
/// cell's exposed value.
pub fn cell_damage<T: Scalar>(state: &CellState<T>, depth: T, curve: &DamageCurve<T>) -> T {
    if !(depth > T::zero()) {
        return T::zero();
    }
    let value = state.exposed_value.max(T::zero());
    (evaluate_curve(curve, depth) * value).min(value)
}
