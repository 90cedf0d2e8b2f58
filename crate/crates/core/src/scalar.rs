//! Scalar abstraction shared by every numeric kernel in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point scalar the geometry, raster and statistics code is generic over.
///
/// `Display` must render the shortest decimal string that parses back to the
/// same value; both `f32` and `f64` satisfy this, which is what the canonical
/// ASCII-grid writer relies on.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Display
    + Debug
    + Default
    + Sum
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into this scalar.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
