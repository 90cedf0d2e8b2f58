//! Simple linear regression, Tukey fences and the Breusch-Pagan LM test.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// 5% critical value of the chi-square distribution with one degree of freedom.
pub const CHI2_1DF_5PCT: f64 = 3.8415;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OlsFit<T> {
    pub slope: T,
    pub intercept: T,
    pub r_squared: T,
}

impl<T: Scalar> OlsFit<T> {
    pub fn predict(&self, x: T) -> T {
        self.intercept + self.slope * x
    }
}

fn mean<T: Scalar>(v: &[T]) -> T {
    v.iter().copied().sum::<T>() / T::from_count(v.len())
}

/// Least-squares line `y = intercept + slope * x`.
pub fn ols_fit<T: Scalar>(x: &[T], y: &[T]) -> Result<OlsFit<T>> {
    if x.len() != y.len() {
        return Err(Error::invalid(format!("x has {} values but y has {}", x.len(), y.len())));
    }
    if x.len() < 3 {
        return Err(Error::invalid(format!("regression needs at least 3 points, got {}", x.len())));
    }
    if x.iter().all(|v| *v == x[0]) {
        return Err(Error::DegenerateRegressor);
    }
    if y.iter().all(|v| *v == y[0]) {
        return Ok(OlsFit { slope: T::zero(), intercept: y[0], r_squared: T::one() });
    }
    let (mx, my) = (mean(x), mean(y));
    let (mut sxx, mut sxy, mut syy) = (T::zero(), T::zero(), T::zero());
    for (&xi, &yi) in x.iter().zip(y) {
        let (dx, dy) = (xi - mx, yi - my);
        sxx = sxx + dx * dx;
        sxy = sxy + dx * dy;
        syy = syy + dy * dy;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: T = x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| {
            let e = yi - (intercept + slope * xi);
            e * e
        })
        .sum();
    let r_squared = (T::one() - ss_res / syy).max(T::zero()).min(T::one());
    Ok(OlsFit { slope, intercept, r_squared })
}

pub fn residuals<T: Scalar>(fit: &OlsFit<T>, x: &[T], y: &[T]) -> Vec<T> {
    x.iter().zip(y).map(|(&xi, &yi)| yi - fit.predict(xi)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BreuschPagan<T> {
    pub statistic: T,
    pub heteroskedastic: bool,
}

/// LM = n * R² of regressing squared OLS residuals on `x` (with intercept);
/// heteroskedastic when LM exceeds [`CHI2_1DF_5PCT`].
///
/// Squared residuals with no spread (including a numerically exact fit)
/// give LM = 0.
pub fn breusch_pagan<T: Scalar>(x: &[T], y: &[T]) -> Result<BreuschPagan<T>> {
    let fit = ols_fit(x, y)?;
    let e2: Vec<T> = residuals(&fit, x, y).into_iter().map(|e| e * e).collect();
    let scale = y.iter().fold(T::zero(), |m, v| m.max(v.abs())).max(T::one());
    let noise = T::epsilon() * T::lit(64.0) * scale;
    let exact_fit = e2.iter().all(|v| *v <= noise * noise);
    let statistic = if exact_fit || e2.iter().all(|v| *v == e2[0]) {
        T::zero()
    } else {
        T::from_count(x.len()) * ols_fit(x, &e2)?.r_squared
    };
    Ok(BreuschPagan { statistic, heteroskedastic: statistic > T::lit(CHI2_1DF_5PCT) })
}

/// Linear-interpolation quantile at 0-based position `p * (n - 1)` of
/// already-sorted values.
pub fn quantile_sorted<T: Scalar>(sorted: &[T], p: T) -> T {
    let pos = p * T::from_count(sorted.len() - 1);
    let lo = pos.floor().to_usize().unwrap_or(0).min(sorted.len() - 1);
    let hi = (lo + 1).min(sorted.len() - 1);
    let frac = pos - T::from_count(lo);
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// Tukey fences: `true` where a value lies outside `[Q1 - 1.5 IQR, Q3 + 1.5 IQR]`.
pub fn tukey_outlier_mask<T: Scalar>(values: &[T]) -> Result<Vec<bool>> {
    if values.len() < 4 {
        return Err(Error::invalid(format!("outlier test needs at least 4 values, got {}", values.len())));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let q1 = quantile_sorted(&sorted, T::lit(0.25));
    let q3 = quantile_sorted(&sorted, T::lit(0.75));
    let k = T::lit(1.5) * (q3 - q1);
    let (lo, hi) = (q1 - k, q3 + k);
    Ok(values.iter().map(|v| *v < lo || *v > hi).collect())
}
