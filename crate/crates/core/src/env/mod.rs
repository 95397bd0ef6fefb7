//! The immutable 2-D ocean scene: route, seabed, water column, mammals and ship.

mod bathymetry;
mod frequency;
mod mammal;
mod route;
mod scenario;
mod ship;
mod ssp;

pub use bathymetry::{depth_at, BathymetryProfile};
pub use frequency::{default_frequency_grid, log_frequency_grid, trapezoid_weights};
pub use mammal::{scatter_mammals, HearingGroup, Mammal, ScatterSpec};
pub use route::{discretize_route, Route};
pub use scenario::{Scenario, ScenarioParts, WaterProperties};
pub use ship::{SfocCurve, ShipCharacteristics, VoyageConstraints};
pub use ssp::{sound_speed_at, SoundSpeedProfile};
