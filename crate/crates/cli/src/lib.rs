//! End-to-end pipeline for hyperelliptic L-series: curve files, bad-prime
//! analysis with overrides, coefficient caches, functional-equation runs,
//! curve search and the fixture suite.

pub mod error;
pub mod fixtures;
pub mod io;
pub mod pipeline;
pub mod search;
pub mod selftest;

pub use error::{exit, PipelineError, Result};
pub use io::{CurveInput, Override, SuperellipticInput};
pub use pipeline::{run, RunOptions, RunReport};
