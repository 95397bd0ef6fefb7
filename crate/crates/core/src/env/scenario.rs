use alloc::format;
use alloc::vec::Vec;

use super::{
    trapezoid_weights, BathymetryProfile, Mammal, Route, ShipCharacteristics, SoundSpeedProfile, VoyageConstraints,
};
use crate::fuel::ResidualChart;
use crate::math::strictly_increasing;
use crate::noise::{Audiogram, AudiogramTable};
use crate::{Error, Result};

/// Sea-water constants used by the resistance model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaterProperties {
    pub density_kg_m3: f64,
    pub kinematic_viscosity_m2_s: f64,
}

impl Default for WaterProperties {
    /// Sea water at 15 °C.
    fn default() -> Self {
        WaterProperties {
            density_kg_m3: 1025.0,
            kinematic_viscosity_m2_s: 1.1883e-6,
        }
    }
}

/// Unvalidated building blocks of a [`Scenario`].
#[derive(Debug, Clone)]
pub struct ScenarioParts {
    pub route: Route,
    pub bathymetry: BathymetryProfile,
    pub ssp: SoundSpeedProfile,
    pub mammals: Vec<Mammal>,
    pub audiograms: AudiogramTable,
    pub ship: ShipCharacteristics,
    pub residual_chart: ResidualChart,
    pub constraints: VoyageConstraints,
    pub frequencies_hz: Vec<f64>,
    pub source_depth_m: f64,
    pub water: WaterProperties,
    pub rng_seed: u64,
}

/// A validated, immutable scene. Construct with [`Scenario::new`].
#[derive(Debug, Clone)]
pub struct Scenario {
    parts: ScenarioParts,
    df_hz: Vec<f64>,
}

impl Scenario {
    /// Validates every invariant and fails on the first violation.
    pub fn new(parts: ScenarioParts) -> Result<Self> {
        let total = parts.route.total_distance_nm();
        if !parts.bathymetry.covers(0.0, total) {
            let (lo, hi) = parts.bathymetry.coverage_nm();
            return Err(Error::invalid(
                "bathymetry",
                format!("coverage [{lo}, {hi}] NM does not span the route [0, {total}] NM"),
            ));
        }

        let f = &parts.frequencies_hz;
        if f.is_empty() || !strictly_increasing(f) || f[0] < 10.0 || f[f.len() - 1] > 1.0e4 {
            return Err(Error::invalid(
                "frequency grid",
                "must be non-empty, strictly increasing and within [10, 10000] Hz",
            ));
        }

        for w in parts.route.waypoints_nm() {
            let seabed = parts.bathymetry.depth_at(w)?;
            if !(parts.source_depth_m > 0.0 && parts.source_depth_m < seabed) {
                return Err(Error::invalid(
                    "source depth",
                    format!(
                        "{} m is outside the water column at waypoint {w} NM (seabed {seabed} m)",
                        parts.source_depth_m
                    ),
                ));
            }
        }

        for (k, m) in parts.mammals.iter().enumerate() {
            m.validate(total, &parts.bathymetry)?;
            if parts.mammals[..k].iter().any(|o| o.id == m.id) {
                return Err(Error::invalid("mammal", format!("duplicate mammal id {}", m.id)));
            }
            if parts.audiograms.get(m.group).is_none() {
                return Err(Error::invalid(
                    "audiograms",
                    format!("no audiogram for hearing group {} (mammal {})", m.group, m.id),
                ));
            }
        }

        parts.ship.validate()?;
        parts.constraints.validate(total)?;

        let w = &parts.water;
        if !(w.density_kg_m3 > 0.0 && w.kinematic_viscosity_m2_s > 0.0) {
            return Err(Error::invalid("water", "density and viscosity must be positive"));
        }

        parts
            .residual_chart
            .check_coverage(&parts.ship, parts.constraints.v_min_kt, parts.constraints.v_max_kt)?;

        let df_hz = trapezoid_weights(&parts.frequencies_hz);
        Ok(Scenario { parts, df_hz })
    }

    pub fn parts(&self) -> &ScenarioParts {
        &self.parts
    }

    pub fn into_parts(self) -> ScenarioParts {
        self.parts
    }

    pub fn route(&self) -> &Route {
        &self.parts.route
    }

    pub fn bathymetry(&self) -> &BathymetryProfile {
        &self.parts.bathymetry
    }

    pub fn ssp(&self) -> &SoundSpeedProfile {
        &self.parts.ssp
    }

    pub fn mammals(&self) -> &[Mammal] {
        &self.parts.mammals
    }

    pub fn audiograms(&self) -> &AudiogramTable {
        &self.parts.audiograms
    }

    /// Audiogram of mammal at position `j`. Presence is checked at construction.
    pub fn audiogram_of(&self, j: usize) -> &Audiogram {
        self.parts
            .audiograms
            .get(self.parts.mammals[j].group)
            .expect("audiogram presence checked at construction")
    }

    pub fn ship(&self) -> &ShipCharacteristics {
        &self.parts.ship
    }

    pub fn residual_chart(&self) -> &ResidualChart {
        &self.parts.residual_chart
    }

    pub fn constraints(&self) -> &VoyageConstraints {
        &self.parts.constraints
    }

    pub fn frequencies_hz(&self) -> &[f64] {
        &self.parts.frequencies_hz
    }

    /// Trapezoidal band weights matching [`Self::frequencies_hz`].
    pub fn df_hz(&self) -> &[f64] {
        &self.df_hz
    }

    pub fn source_depth_m(&self) -> f64 {
        self.parts.source_depth_m
    }

    pub fn water(&self) -> &WaterProperties {
        &self.parts.water
    }

    pub fn rng_seed(&self) -> u64 {
        self.parts.rng_seed
    }

    pub fn n_legs(&self) -> usize {
        self.parts.route.n_legs()
    }
}
