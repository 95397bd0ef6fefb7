use alloc::format;
use alloc::vec::Vec;

use crate::math::{interp_linear, strictly_increasing};
use crate::{Error, Result};

/// Specific fuel oil consumption (MT/kWh) as a piecewise-linear function of
/// engine load fraction, held flat outside the sampled loads.
#[derive(Debug, Clone, PartialEq)]
pub struct SfocCurve {
    loads: Vec<f64>,
    sfoc: Vec<f64>,
}

impl SfocCurve {
    pub fn new(points: &[(f64, f64)]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("SFOC curve", "no points"));
        }
        let loads: Vec<f64> = points.iter().map(|p| p.0).collect();
        let sfoc: Vec<f64> = points.iter().map(|p| p.1).collect();
        if !strictly_increasing(&loads) || loads.iter().any(|&l| !(l > 0.0 && l <= 1.0)) {
            return Err(Error::invalid(
                "SFOC curve",
                "load fractions must be strictly increasing within (0, 1]",
            ));
        }
        if let Some(s) = sfoc.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
            return Err(Error::invalid(
                "SFOC curve",
                format!("SFOC values must be positive, got {s}"),
            ));
        }
        Ok(SfocCurve { loads, sfoc })
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.loads.iter().copied().zip(self.sfoc.iter().copied())
    }

    pub fn load_coverage(&self) -> (f64, f64) {
        (self.loads[0], self.loads[self.loads.len() - 1])
    }

    /// SFOC in MT/kWh at `load` (fraction of max power).
    pub fn at(&self, load: f64) -> f64 {
        let (lo, hi) = self.load_coverage();
        interp_linear(&self.loads, &self.sfoc, load.clamp(lo, hi))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShipCharacteristics {
    pub length_pp_m: f64,
    pub breadth_m: f64,
    pub draft_m: f64,
    pub block_coeff: f64,
    pub midship_coeff: f64,
    pub displacement_mt: f64,
    pub max_power_kw: f64,
    pub sfoc: SfocCurve,
    /// Quasi-propulsive efficiency η_D.
    pub propulsion_efficiency: f64,
    /// Incremental (roughness) resistance coefficient C_a.
    pub incremental_coeff: f64,
}

impl ShipCharacteristics {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("length_pp_m", self.length_pp_m),
            ("breadth_m", self.breadth_m),
            ("draft_m", self.draft_m),
            ("displacement_mt", self.displacement_mt),
            ("max_power_kw", self.max_power_kw),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid("ship", format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.block_coeff > 0.0 && self.block_coeff < 1.0) {
            return Err(Error::invalid(
                "ship",
                format!("block_coeff must lie in (0, 1), got {}", self.block_coeff),
            ));
        }
        if !(self.midship_coeff > 0.0 && self.midship_coeff <= 1.0) {
            return Err(Error::invalid(
                "ship",
                format!("midship_coeff must lie in (0, 1], got {}", self.midship_coeff),
            ));
        }
        if !(self.propulsion_efficiency > 0.0 && self.propulsion_efficiency <= 1.0) {
            return Err(Error::invalid(
                "ship",
                format!(
                    "propulsion_efficiency must lie in (0, 1], got {}",
                    self.propulsion_efficiency
                ),
            ));
        }
        if !(self.incremental_coeff >= 0.0 && self.incremental_coeff.is_finite()) {
            return Err(Error::invalid(
                "ship",
                format!("incremental_coeff must be >= 0, got {}", self.incremental_coeff),
            ));
        }
        if self.block_coeff >= self.midship_coeff {
            return Err(Error::invalid(
                "ship",
                "block_coeff must be below midship_coeff (prismatic coefficient < 1)",
            ));
        }
        Ok(())
    }

    pub fn prismatic_coeff(&self) -> f64 {
        self.block_coeff / self.midship_coeff
    }

    /// Denny-Mumford wetted surface estimate, m².
    pub fn wetted_surface_m2(&self) -> f64 {
        1.025 * self.length_pp_m * (self.block_coeff * self.breadth_m + 1.7 * self.draft_m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoyageConstraints {
    pub eta_h: f64,
    pub v_min_kt: f64,
    pub v_max_kt: f64,
}

impl VoyageConstraints {
    pub fn validate(&self, total_distance_nm: f64) -> Result<()> {
        if !(self.v_min_kt > 0.0 && self.v_min_kt < self.v_max_kt && self.v_max_kt.is_finite()) {
            return Err(Error::invalid(
                "constraints",
                format!(
                    "need 0 < v_min < v_max, got v_min = {} kt, v_max = {} kt",
                    self.v_min_kt, self.v_max_kt
                ),
            ));
        }
        if !(self.eta_h.is_finite() && self.eta_h > 0.0) {
            return Err(Error::invalid(
                "constraints",
                format!("eta must be positive, got {} h", self.eta_h),
            ));
        }
        let fastest = total_distance_nm / self.v_max_kt;
        if self.eta_h < fastest {
            return Err(Error::Infeasible(format!(
                "ETA {} h is shorter than the {fastest} h needed at v_max",
                self.eta_h
            )));
        }
        Ok(())
    }
}
