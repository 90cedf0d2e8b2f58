use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Monotone depth (ft) to damage-fraction breakpoint table.
#[derive(Debug, Clone, PartialEq)]
pub struct DamageCurve<T> {
    breakpoints: Vec<(T, T)>,
}

impl<T: Scalar> DamageCurve<T> {
    pub fn new(breakpoints: Vec<(T, T)>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::invalid(format!(
                "damage curve needs at least 2 breakpoints, got {}",
                breakpoints.len()
            )));
        }
        for (i, &(d, f)) in breakpoints.iter().enumerate() {
            if !d.is_finite() || !f.is_finite() {
                return Err(Error::invalid(format!("breakpoint {i} is not finite")));
            }
            if f < T::zero() || f > T::one() {
                return Err(Error::invalid(format!("breakpoint {i}: fraction {f} outside [0,1]")));
            }
        }
        for (i, w) in breakpoints.windows(2).enumerate() {
            if !(w[1].0 > w[0].0) {
                return Err(Error::invalid(format!(
                    "breakpoint {}: depths strictly increasing required ({} after {})",
                    i + 1,
                    w[1].0,
                    w[0].0
                )));
            }
            if w[1].1 < w[0].1 {
                return Err(Error::invalid(format!(
                    "breakpoint {}: fractions nondecreasing required ({} after {})",
                    i + 1,
                    w[1].1,
                    w[0].1
                )));
            }
        }
        Ok(DamageCurve { breakpoints })
    }

    pub fn breakpoints(&self) -> &[(T, T)] {
        &self.breakpoints
    }
}

/// Parses a JSON array of `[depth, fraction]` pairs.
pub fn parse_damage_curve<T: Scalar>(text: &str) -> Result<DamageCurve<T>> {
    let pairs: Vec<[T; 2]> = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), e.column(), format!("damage curve: {e}")))?;
    DamageCurve::new(pairs.into_iter().map(|[d, f]| (d, f)).collect())
}
