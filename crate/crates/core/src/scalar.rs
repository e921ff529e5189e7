//! Scalar abstraction for the numeric solvers.
//!
//! Everything real-valued in this crate is generic over [`Real`], a thin
//! bundle of `num-traits` bounds satisfied by `f32` and `f64`. Distances over
//! discrete spaces are kept as exact integers and only converted to `F` at
//! the point where they enter an objective.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar usable by the solvers.
pub trait Real: Float + FromPrimitive + Debug + Display + Default + 'static {}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Display + Default + 'static {}

/// Shorthand conversion from an `f64` literal or computed constant.
pub fn real<F: Real>(v: f64) -> F {
    F::from_f64(v).expect("f64 constant representable in scalar type")
}

/// Conversion from an exact integer count.
pub fn real_u64<F: Real>(v: u64) -> F {
    F::from_u64(v).expect("count representable in scalar type")
}

/// Fixed 12-decimal-place rendering used by canonical point encodings.
///
/// Negative zero is normalized so that `-0.0` and `0.0` encode identically.
pub fn format_fixed12<F: Real>(v: F) -> String {
    let mut x = v.to_f64().unwrap_or(f64::NAN);
    if x == 0.0 {
        x = 0.0; // drop the sign of -0.0
    }
    format!("{x:.12}")
}
