//! Still-water resistance, the propulsion power chain and the fuel objective J2.

mod chart;

pub use chart::{residual_coefficient, ResidualChart};

use alloc::format;

use crate::env::{Scenario, ShipCharacteristics, WaterProperties};
use crate::math::log10;
use crate::units::knots_to_ms;
use crate::{Error, Result};

/// ITTC-1957 model-ship correlation line, C_f = 0.075/(log10 Re − 2)².
pub fn friction_coefficient(speed_ms: f64, length_m: f64, viscosity_m2_s: f64) -> Result<f64> {
    if !(speed_ms > 0.0 && length_m > 0.0 && viscosity_m2_s > 0.0) {
        return Err(Error::invalid(
            "friction inputs",
            "speed, length and viscosity must be positive",
        ));
    }
    friction_from_reynolds(speed_ms * length_m / viscosity_m2_s)
}

pub fn friction_from_reynolds(re: f64) -> Result<f64> {
    if !(re > 100.0) {
        return Err(Error::invalid("Reynolds number", format!("must exceed 100, got {re}")));
    }
    let d = log10(re) - 2.0;
    Ok(0.075 / (d * d))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResistanceBreakdown {
    pub c_f: f64,
    pub c_r: f64,
    pub c_a: f64,
    pub wetted_surface_m2: f64,
    /// Total resistance, N.
    pub r_total_n: f64,
    pub speed_ms: f64,
}

/// R = (C_f + C_r + C_a)·½ρv²S.
pub fn total_resistance(
    speed_kt: f64,
    ship: &ShipCharacteristics,
    chart: &ResidualChart,
    water: &WaterProperties,
) -> Result<ResistanceBreakdown> {
    if !(speed_kt > 0.0 && speed_kt.is_finite()) {
        return Err(Error::invalid("speed", format!("must be positive, got {speed_kt} kt")));
    }
    let v = knots_to_ms(speed_kt);
    let c_f = friction_coefficient(v, ship.length_pp_m, water.kinematic_viscosity_m2_s)?;
    let c_r = residual_coefficient(v, ship, chart)?;
    let c_a = ship.incremental_coeff;
    let s = ship.wetted_surface_m2();
    Ok(ResistanceBreakdown {
        c_f,
        c_r,
        c_a,
        wetted_surface_m2: s,
        r_total_n: (c_f + c_r + c_a) * 0.5 * water.density_kg_m3 * v * v * s,
        speed_ms: v,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuelCurvePoint {
    pub speed_kt: f64,
    pub effective_power_kw: f64,
    pub brake_power_kw: f64,
    pub load_fraction: f64,
    pub sfoc_mt_per_kwh: f64,
    pub fuel_rate_mt_h: f64,
}

/// F(v) = P_B·SFOC with P_B = R·v/η_D.
///
/// Overload (`P_B > P_max`) is returned, not clamped; with `strict` it is an
/// error instead.
pub fn fuel_rate(
    speed_kt: f64,
    ship: &ShipCharacteristics,
    chart: &ResidualChart,
    water: &WaterProperties,
    strict: bool,
) -> Result<FuelCurvePoint> {
    let r = total_resistance(speed_kt, ship, chart, water)?;
    let pe = r.r_total_n * r.speed_ms / 1000.0;
    let pb = pe / ship.propulsion_efficiency;
    let load = pb / ship.max_power_kw;
    if strict && !(load > 0.0 && load <= 1.0) {
        return Err(Error::Infeasible(format!(
            "engine load {load:.4} at {speed_kt} kt is outside (0, 1]"
        )));
    }
    let sfoc = ship.sfoc.at(load);
    Ok(FuelCurvePoint {
        speed_kt,
        effective_power_kw: pe,
        brake_power_kw: pb,
        load_fraction: load,
        sfoc_mt_per_kwh: sfoc,
        fuel_rate_mt_h: pb * sfoc,
    })
}

/// J2 = Σ (d_i/v_i)·F(v_i) in MT, with d in NM and v in kt.
pub fn fuel_objective(plan: &[f64], scenario: &Scenario) -> Result<f64> {
    FuelModel::new(scenario).objective(plan, &scenario.route().leg_lengths_nm())
}

/// Fuel model bound to one ship, chart and water.
#[derive(Debug, Clone, Copy)]
pub struct FuelModel<'a> {
    pub ship: &'a ShipCharacteristics,
    pub chart: &'a ResidualChart,
    pub water: &'a WaterProperties,
}

impl<'a> FuelModel<'a> {
    pub fn new(scenario: &'a Scenario) -> Self {
        FuelModel {
            ship: scenario.ship(),
            chart: scenario.residual_chart(),
            water: scenario.water(),
        }
    }

    pub fn point(&self, speed_kt: f64) -> Result<FuelCurvePoint> {
        fuel_rate(speed_kt, self.ship, self.chart, self.water, false)
    }

    pub fn objective(&self, plan: &[f64], legs_nm: &[f64]) -> Result<f64> {
        if plan.len() != legs_nm.len() {
            return Err(Error::DimensionMismatch {
                what: "speed plan",
                expected: legs_nm.len(),
                got: plan.len(),
            });
        }
        plan.iter()
            .zip(legs_nm)
            .try_fold(0.0, |acc, (&v, &d)| Ok(acc + d / v * self.point(v)?.fuel_rate_mt_h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::SfocCurve;

    pub(crate) fn chart() -> ResidualChart {
        let mut rows = alloc::vec::Vec::new();
        for i in 0..=10 {
            for j in 0..=3 {
                let sl = 0.1 * i as f64;
                let cp = 0.5 + 0.1 * j as f64;
                rows.push((sl, cp, 1.0e-4 * (1.0 + sl * sl * 4.0) * (1.0 + cp)));
            }
        }
        ResidualChart::from_rows(&rows).unwrap()
    }

    pub(crate) fn ship() -> ShipCharacteristics {
        ShipCharacteristics {
            length_pp_m: 258.4,
            breadth_m: 42.8,
            draft_m: 14.55,
            block_coeff: 0.6234,
            midship_coeff: 0.975,
            displacement_mt: 102_880.0,
            max_power_kw: 57_000.0,
            sfoc: SfocCurve::new(&[(0.1, 2.1e-4), (0.5, 1.75e-4), (0.8, 1.7e-4), (1.0, 1.78e-4)]).unwrap(),
            propulsion_efficiency: 0.7,
            incremental_coeff: 4.0e-4,
        }
    }

    #[test]
    fn friction_examples() {
        assert!((friction_from_reynolds(1e9).unwrap() - 0.075 / 49.0).abs() < 1e-15);
        assert!((friction_from_reynolds(1e7).unwrap() - 3.0e-3).abs() < 1e-15);
        assert!(friction_from_reynolds(100.0).is_err());
        let mut prev = f64::INFINITY;
        for k in 0..100 {
            let c = friction_from_reynolds(1e5 * 1.2f64.powi(k)).unwrap();
            assert!(c < prev);
            prev = c;
        }
    }

    #[test]
    fn resistance_scales_with_v_squared_at_frozen_coefficients() {
        let w = WaterProperties::default();
        let s = ship();
        let a = total_resistance(10.0, &s, &chart(), &w).unwrap();
        let b = total_resistance(20.0, &s, &chart(), &w).unwrap();
        let frozen = |r: &ResistanceBreakdown, v: f64| {
            (a.c_f + a.c_r + a.c_a) * 0.5 * w.density_kg_m3 * v * v * r.wetted_surface_m2
        };
        assert!((frozen(&b, b.speed_ms) / frozen(&a, a.speed_ms) - 4.0).abs() < 1e-12);
        let sum = (b.c_f + b.c_r + b.c_a) * 0.5 * w.density_kg_m3 * b.speed_ms * b.speed_ms * b.wetted_surface_m2;
        assert_eq!(sum, b.r_total_n);
    }

    #[test]
    fn slow_speed_is_finite_and_positive() {
        let r = total_resistance(0.1, &ship(), &chart(), &WaterProperties::default()).unwrap();
        assert!(r.r_total_n > 0.0 && r.r_total_n < 1.0e4);
        assert!(total_resistance(0.0, &ship(), &chart(), &WaterProperties::default()).is_err());
    }

    #[test]
    fn power_chain_arithmetic() {
        let pe: f64 = 1000.0;
        assert!((pe / 0.7 - 1428.571428571).abs() < 1e-6);
        assert!((10_000.0f64 * 1.9e-4 - 1.9).abs() < 1e-12);
        let p = fuel_rate(14.0, &ship(), &chart(), &WaterProperties::default(), false).unwrap();
        assert!((p.brake_power_kw - p.effective_power_kw / 0.7).abs() < 1e-9);
        assert!((p.fuel_rate_mt_h - p.brake_power_kw * p.sfoc_mt_per_kwh).abs() < 1e-12);
    }

    #[test]
    fn strict_mode_rejects_overload() {
        let mut s = ship();
        s.max_power_kw = 10.0;
        let w = WaterProperties::default();
        assert!(fuel_rate(14.0, &s, &chart(), &w, false).is_ok());
        assert!(matches!(
            fuel_rate(14.0, &s, &chart(), &w, true),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn fuel_rate_increases_with_speed() {
        let w = WaterProperties::default();
        let (s, c) = (ship(), chart());
        let mut prev = 0.0;
        for k in 0..=80 {
            let v = 8.0 + 0.1 * k as f64;
            let f = fuel_rate(v, &s, &c, &w, false).unwrap().fuel_rate_mt_h;
            assert!(f > prev);
            prev = f;
        }
    }

    #[test]
    fn objective_structure() {
        let w = WaterProperties::default();
        let (s, c) = (ship(), chart());
        let m = FuelModel {
            ship: &s,
            chart: &c,
            water: &w,
        };
        let f = m.point(12.0).unwrap().fuel_rate_mt_h;
        let one = m.objective(&[12.0], &[200.0]).unwrap();
        assert!((one - 200.0 / 12.0 * f).abs() < 1e-9);
        let two = m.objective(&[12.0, 12.0], &[100.0, 100.0]).unwrap();
        assert!((one - two).abs() < 1e-9 * one);
        assert!(m.objective(&[12.0], &[1.0, 2.0]).is_err());
    }
}
