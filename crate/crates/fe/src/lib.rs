//! Numerical check of the functional equation `Lambda(s) = w Lambda(2 - s)`
//! for a truncated L-series, through the theta identity
//! `Theta(1/t) = w t^2 Theta(t)`.

pub mod cutoff;
pub mod error;
pub mod kernel;
pub mod theta;
pub mod verify;

pub use cutoff::choose_m;
pub use error::{FeError, Result};
pub use kernel::{phi_g, BigFloat, Kernel, DEFAULT_PRECISION};
pub use theta::theta;
pub use verify::{verify_fe, FEReport, Verdict};
