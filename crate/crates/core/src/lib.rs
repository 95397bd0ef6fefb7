//! Speed planning for a ship on a fixed route that trades underwater radiated
//! noise received by marine mammals against voyage fuel.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the numerical
//! core:
//!
//! * [`env`]: route discretization, bathymetry and sound-speed profiles,
//!   mammals, ship data and the validated [`env::Scenario`].
//! * [`acoustics`]: ray/beam propagation and the speed-independent
//!   transmission-loss tensor.
//! * [`noise`]: source spectrum, audiograms and the noise objective.
//! * [`fuel`]: still-water resistance, the power chain and the fuel objective.
//! * [`optimizer`]: constrained NSGA-II, ideal/nadir normalization,
//!   hypervolume and TOPSIS.
//!
//! File formats, the command-line driver and parallel drivers live in the
//! `quietvoyage` crate.
#![no_std]
#![warn(missing_debug_implementations, rust_2018_idioms)]
// `!(x > 0.0)` rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod acoustics;
pub mod env;
mod error;
pub mod fuel;
pub(crate) mod math;
pub mod noise;
pub mod optimizer;
pub mod units;

pub use error::{Error, Result};
