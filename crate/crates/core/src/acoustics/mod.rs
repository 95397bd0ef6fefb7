//! Ray and Gaussian-beam propagation over the range-depth slice.
//!
//! Rays are traced once per source position and reused across the frequency
//! grid; only beam width and volume attenuation depend on frequency.

mod field;
mod ray;
mod tensor;

pub use field::{field_at, transmission_loss, transmission_loss_many};
pub use ray::{trace_ray, Heading, Launch, RayState, RayTracer};
pub use tensor::{precompute_tl_tensor, tl_grid, tl_row, GridSpec, TlGridCell, TlRow, TlTensor};

use alloc::format;
use alloc::vec::Vec;

use crate::env::{BathymetryProfile, Scenario, SoundSpeedProfile};
use crate::{Error, Result};

/// Launch fan and integration settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamFanConfig {
    pub n_rays: usize,
    pub angle_min_deg: f64,
    pub angle_max_deg: f64,
    /// Fixed RK4 arc-length step, m.
    pub step_m: f64,
    /// Horizontal tracing limit. `None` traces just past the furthest receiver.
    pub max_range_m: Option<f64>,
}

impl Default for BeamFanConfig {
    fn default() -> Self {
        BeamFanConfig {
            n_rays: 181,
            angle_min_deg: -45.0,
            angle_max_deg: 45.0,
            step_m: 10.0,
            max_range_m: None,
        }
    }
}

impl BeamFanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_rays < 2 {
            return Err(Error::invalid("beam fan", "n_rays must be at least 2"));
        }
        if !(self.angle_min_deg < self.angle_max_deg && self.angle_min_deg > -90.0 && self.angle_max_deg < 90.0) {
            return Err(Error::invalid(
                "beam fan",
                format!(
                    "need -90 < angle_min < angle_max < 90, got [{}, {}]",
                    self.angle_min_deg, self.angle_max_deg
                ),
            ));
        }
        if !(self.step_m > 0.0 && self.step_m.is_finite()) {
            return Err(Error::invalid(
                "beam fan",
                format!("step_m must be positive, got {}", self.step_m),
            ));
        }
        if let Some(r) = self.max_range_m {
            if !(r > 0.0) {
                return Err(Error::invalid("beam fan", "max_range_m must be positive"));
            }
        }
        Ok(())
    }

    /// Launch angles in degrees, evenly spaced and inclusive of both ends.
    pub fn angles_deg(&self) -> Vec<f64> {
        let span = self.angle_max_deg - self.angle_min_deg;
        let n = self.n_rays - 1;
        (0..self.n_rays)
            .map(|k| self.angle_min_deg + span * k as f64 / n as f64)
            .collect()
    }

    pub fn spacing_rad(&self) -> f64 {
        (self.angle_max_deg - self.angle_min_deg).to_radians() / (self.n_rays - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationConfig {
    pub fan: BeamFanConfig,
    /// Pressure reflection coefficient at the sea surface.
    pub surface_reflection: f64,
    /// Pressure reflection coefficient magnitude per bottom bounce.
    pub bottom_reflection: f64,
    pub tl_cap_db: f64,
    /// Coherent beam summation instead of the default energy sum.
    pub coherent: bool,
    /// Thorp volume attenuation.
    pub volume_attenuation: bool,
}

impl Default for PropagationConfig {
    fn default() -> Self {
        PropagationConfig {
            fan: BeamFanConfig::default(),
            surface_reflection: -1.0,
            bottom_reflection: 0.85,
            tl_cap_db: 200.0,
            coherent: false,
            volume_attenuation: true,
        }
    }
}

impl PropagationConfig {
    pub fn validate(&self) -> Result<()> {
        self.fan.validate()?;
        if !(self.surface_reflection.abs() <= 1.0 && self.bottom_reflection.abs() <= 1.0) {
            return Err(Error::invalid(
                "propagation",
                "reflection coefficients must have magnitude <= 1",
            ));
        }
        if !(self.tl_cap_db > 0.0 && self.tl_cap_db.is_finite()) {
            return Err(Error::invalid("propagation", "tl_cap_db must be positive"));
        }
        Ok(())
    }
}

/// Thorp volume attenuation in dB/km.
pub fn thorp_attenuation_db_per_km(frequency_hz: f64) -> f64 {
    let f2 = (frequency_hz / 1000.0) * (frequency_hz / 1000.0);
    0.11 * f2 / (1.0 + f2) + 44.0 * f2 / (4100.0 + f2) + 2.75e-4 * f2 + 0.003
}

/// Propagation medium: a sound-speed profile with optional flat pressure-release
/// surface at z = 0 and optional seabed.
#[derive(Debug, Clone)]
pub struct Medium<'a> {
    ssp: &'a SoundSpeedProfile,
    bathymetry: Option<&'a BathymetryProfile>,
    surface: bool,
    kinks: Vec<(f64, f64)>,
}

impl<'a> Medium<'a> {
    pub fn new(ssp: &'a SoundSpeedProfile, bathymetry: Option<&'a BathymetryProfile>, surface: bool) -> Self {
        Medium {
            ssp,
            bathymetry,
            surface,
            kinks: ssp.gradient_kinks(),
        }
    }

    /// Surface and seabed of the scenario.
    pub fn of(scenario: &'a Scenario) -> Self {
        Self::new(scenario.ssp(), Some(scenario.bathymetry()), true)
    }

    /// No boundaries at all.
    pub fn free_field(ssp: &'a SoundSpeedProfile) -> Self {
        Self::new(ssp, None, false)
    }

    #[inline]
    pub(crate) fn sound_speed(&self, z: f64) -> (f64, f64) {
        self.ssp.eval(z)
    }

    #[inline]
    pub(crate) fn sound_speed_heading(&self, z: f64, downward: bool) -> (f64, f64) {
        self.ssp.eval_heading(z, downward)
    }

    #[inline]
    pub(crate) fn seabed(&self, x_m: f64) -> Option<(f64, f64)> {
        self.bathymetry.map(|b| b.depth_and_slope_m(x_m))
    }

    pub(crate) fn has_surface(&self) -> bool {
        self.surface
    }

    pub(crate) fn kinks(&self) -> &[(f64, f64)] {
        &self.kinks
    }

    /// Whether `(x, z)` lies strictly inside the water column.
    pub fn contains(&self, x_m: f64, z_m: f64) -> bool {
        if !(x_m.is_finite() && z_m.is_finite()) {
            return false;
        }
        if self.surface && z_m <= 0.0 {
            return false;
        }
        match self.seabed(x_m) {
            Some((d, _)) => z_m < d,
            None => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thorp_reference_values() {
        let a = thorp_attenuation_db_per_km(1000.0);
        let expected = 0.11 / 2.0 + 44.0 / 4101.0 + 2.75e-4 + 0.003;
        assert!((a - expected).abs() < 1e-15);
        assert!(thorp_attenuation_db_per_km(10_000.0) > thorp_attenuation_db_per_km(1000.0));
    }

    #[test]
    fn fan_angles() {
        let f = BeamFanConfig::default();
        let a = f.angles_deg();
        assert_eq!(a.len(), 181);
        assert_eq!(a[0], -45.0);
        assert_eq!(a[180], 45.0);
        assert!((a[90]).abs() < 1e-12);
        assert!((f.spacing_rad() - 0.5f64.to_radians()).abs() < 1e-15);
        assert!(BeamFanConfig { n_rays: 1, ..f }.validate().is_err());
        assert!(BeamFanConfig { step_m: 0.0, ..f }.validate().is_err());
        assert!(BeamFanConfig {
            angle_min_deg: 10.0,
            angle_max_deg: 5.0,
            ..f
        }
        .validate()
        .is_err());
    }
}

#[cfg(test)]
mod oracle_tests;
