//! Exact arithmetic, reduction analysis, point counting and L-series
//! assembly for hyperelliptic curves `y^2 + h(x) y = g(x)` over the
//! rationals.

pub mod arith;
pub mod curve;
pub mod error;
pub mod lseries;
pub mod reduction;
pub mod serde_str;
pub mod superelliptic;
pub mod zeta;

pub use arith::intpoly::IntPoly;
pub use curve::CurveSpec;
pub use error::{Error, Result};
