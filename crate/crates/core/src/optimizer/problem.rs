use alloc::format;
use alloc::vec::Vec;

use crate::acoustics::TlTensor;
use crate::env::{Scenario, VoyageConstraints};
use crate::fuel::FuelModel;
use crate::noise::NoiseModel;
use crate::{Error, Result};

/// Objectives and aggregate constraint violation of one decision vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    /// (J1, J2), both minimized.
    pub objectives: [f64; 2],
    /// Zero iff every constraint holds.
    pub violation: f64,
}

impl Evaluation {
    pub fn new(objectives: [f64; 2], violation: f64) -> Self {
        Evaluation { objectives, violation }
    }

    pub fn is_feasible(&self) -> bool {
        self.violation <= 0.0
    }
}

/// A box-bounded bi-objective problem with one scalar constraint violation.
pub trait Problem {
    fn n_vars(&self) -> usize;

    /// Common lower and upper bound of every variable.
    fn bounds(&self) -> (f64, f64);

    fn evaluate(&self, x: &[f64]) -> Result<Evaluation>;

    /// Evaluates a batch. Implementations may parallelize; results must not
    /// depend on evaluation order.
    fn evaluate_batch(&self, xs: &[Vec<f64>]) -> Result<Vec<Evaluation>> {
        xs.iter().map(|x| self.evaluate(x)).collect()
    }

    /// Projects a candidate back into the admissible set.
    fn repair(&self, x: &mut [f64]) {
        let (lo, hi) = self.bounds();
        for v in x {
            *v = v.clamp(lo, hi);
        }
    }

    /// A candidate to seed the initial population with.
    fn anchor(&self) -> Option<Vec<f64>> {
        None
    }
}

impl<P: Problem + ?Sized> Problem for &P {
    fn n_vars(&self) -> usize {
        (**self).n_vars()
    }
    fn bounds(&self) -> (f64, f64) {
        (**self).bounds()
    }
    fn evaluate(&self, x: &[f64]) -> Result<Evaluation> {
        (**self).evaluate(x)
    }
    fn evaluate_batch(&self, xs: &[Vec<f64>]) -> Result<Vec<Evaluation>> {
        (**self).evaluate_batch(xs)
    }
    fn repair(&self, x: &mut [f64]) {
        (**self).repair(x)
    }
    fn anchor(&self) -> Option<Vec<f64>> {
        (**self).anchor()
    }
}

/// Everything known about one speed plan.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanAssessment {
    pub j1_w_m2: f64,
    pub j2_mt: f64,
    pub voyage_time_h: f64,
    pub brake_power_kw: Vec<f64>,
    pub violation: f64,
}

/// The speed-planning problem: one speed per leg in knots.
///
/// Constraint violation is the relative ETA overrun plus the relative
/// overload of every leg above the engine's maximum power; speed bounds are
/// enforced by repair.
#[derive(Debug, Clone)]
pub struct VoyageProblem<'a> {
    noise: NoiseModel,
    fuel: FuelModel<'a>,
    legs_nm: Vec<f64>,
    constraints: VoyageConstraints,
    speed_levels: Option<Vec<f64>>,
}

impl<'a> VoyageProblem<'a> {
    pub fn new(scenario: &'a Scenario, tl: &TlTensor) -> Result<Self> {
        Ok(VoyageProblem {
            noise: NoiseModel::new(tl, scenario)?,
            fuel: FuelModel::new(scenario),
            legs_nm: scenario.route().leg_lengths_nm(),
            constraints: *scenario.constraints(),
            speed_levels: None,
        })
    }

    /// Restricts speeds to a discrete set: repair snaps each gene to the
    /// nearest level. Levels must lie within the speed bounds.
    pub fn with_speed_levels(mut self, levels: &[f64]) -> Result<Self> {
        let (lo, hi) = (self.constraints.v_min_kt, self.constraints.v_max_kt);
        if levels.is_empty() || levels.iter().any(|v| !(*v >= lo && *v <= hi)) {
            return Err(Error::invalid(
                "speed levels",
                format!("need at least one level, all within [{lo}, {hi}] kt"),
            ));
        }
        let mut l = levels.to_vec();
        l.sort_by(f64::total_cmp);
        l.dedup();
        self.speed_levels = Some(l);
        Ok(self)
    }

    pub fn speed_levels(&self) -> Option<&[f64]> {
        self.speed_levels.as_deref()
    }

    pub fn noise_model(&self) -> &NoiseModel {
        &self.noise
    }

    pub fn legs_nm(&self) -> &[f64] {
        &self.legs_nm
    }

    pub fn constraints(&self) -> &VoyageConstraints {
        &self.constraints
    }

    pub fn assess(&self, plan: &[f64]) -> Result<PlanAssessment> {
        if plan.len() != self.legs_nm.len() {
            return Err(Error::DimensionMismatch {
                what: "speed plan",
                expected: self.legs_nm.len(),
                got: plan.len(),
            });
        }
        if let Some(v) = plan.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
            return Err(Error::invalid("speed plan", format!("speed {v} kt is not positive")));
        }
        let p_max = self.fuel.ship.max_power_kw;
        let mut j2 = 0.0;
        let mut time = 0.0;
        let mut overload = 0.0;
        let mut power = Vec::with_capacity(plan.len());
        for (&v, &d) in plan.iter().zip(&self.legs_nm) {
            let pt = self.fuel.point(v)?;
            let hours = d / v;
            time += hours;
            j2 += hours * pt.fuel_rate_mt_h;
            overload += (pt.brake_power_kw - p_max).max(0.0) / p_max;
            power.push(pt.brake_power_kw);
        }
        let eta = self.constraints.eta_h;
        Ok(PlanAssessment {
            j1_w_m2: self.noise.j1(plan),
            j2_mt: j2,
            voyage_time_h: time,
            brake_power_kw: power,
            violation: (time - eta).max(0.0) / eta + overload,
        })
    }
}

impl Problem for VoyageProblem<'_> {
    fn n_vars(&self) -> usize {
        self.legs_nm.len()
    }

    fn bounds(&self) -> (f64, f64) {
        (self.constraints.v_min_kt, self.constraints.v_max_kt)
    }

    fn evaluate(&self, x: &[f64]) -> Result<Evaluation> {
        let a = self.assess(x)?;
        Ok(Evaluation::new([a.j1_w_m2, a.j2_mt], a.violation))
    }

    fn repair(&self, x: &mut [f64]) {
        let (lo, hi) = self.bounds();
        for v in x.iter_mut() {
            *v = v.clamp(lo, hi);
            if let Some(levels) = &self.speed_levels {
                *v = nearest(levels, *v);
            }
        }
    }

    /// The constant speed that arrives exactly at the ETA.
    fn anchor(&self) -> Option<Vec<f64>> {
        let total: f64 = self.legs_nm.iter().sum();
        let mut x = alloc::vec![total / self.constraints.eta_h; self.legs_nm.len()];
        self.repair(&mut x);
        if let Some(levels) = &self.speed_levels {
            // Round up so the anchor stays ETA-feasible where possible.
            let v = x[0];
            if total / v > self.constraints.eta_h {
                if let Some(&up) = levels.iter().find(|&&l| l > v) {
                    x.iter_mut().for_each(|g| *g = up);
                }
            }
        }
        Some(x)
    }
}

/// Nearest entry of a sorted slice, lower on exact ties.
fn nearest(levels: &[f64], v: f64) -> f64 {
    let k = levels.partition_point(|&l| l < v);
    match (k.checked_sub(1).map(|i| levels[i]), levels.get(k)) {
        (Some(a), Some(&b)) => {
            if v - a <= b - v {
                a
            } else {
                b
            }
        }
        (Some(a), None) => a,
        (None, Some(&b)) => b,
        (None, None) => v,
    }
}
