//! Scenario files, CSV exports and the command-line driver for
//! `quietvoyage-core`.

// `!(x > 0.0)` rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod io;
pub mod manifest;
pub mod parallel;
pub mod pipeline;
pub mod scenario_file;
pub mod validation;

pub use error::{AppError, AppResult};
