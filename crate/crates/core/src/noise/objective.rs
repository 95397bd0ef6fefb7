use alloc::vec;
use alloc::vec::Vec;

use super::{intensity_to_db, source_level_unchecked, spl_to_intensity, I0_W_M2};
use crate::acoustics::TlTensor;
use crate::env::Scenario;
use crate::math::{db_to_power, log10};
use crate::{Error, Result};

/// J1 and its decomposition over legs and mammals.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseObjectiveBreakdown {
    /// J1 in W/m².
    pub total_intensity: f64,
    /// `(mammal id, W/m²)` in scenario order.
    pub per_mammal: Vec<(usize, f64)>,
    pub per_leg: Vec<f64>,
    /// Row-major `[leg][mammal]` contributions.
    pub per_leg_mammal: Vec<f64>,
    /// 10·log10(J1/I0).
    pub total_db: f64,
}

fn check_dims(plan: &[f64], tl: &TlTensor, scenario: &Scenario) -> Result<()> {
    let n_legs = scenario.n_legs();
    if plan.len() != n_legs {
        return Err(Error::DimensionMismatch {
            what: "speed plan",
            expected: n_legs,
            got: plan.len(),
        });
    }
    if let Some(v) = plan.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::invalid(
            "speed plan",
            alloc::format!("speeds must be positive, got {v}"),
        ));
    }
    tl.check_matches(scenario)
}

/// J1 = Σ_i Σ_j Σ_f I0·10^((NLS(v_i, f) − TL(i, j, f) − α_j(f))/10)·df.
///
/// Leg `i` radiates from waypoint `i`. Contributions below the audiogram are
/// kept as they are.
pub fn noise_objective(plan: &[f64], tl: &TlTensor, scenario: &Scenario) -> Result<NoiseObjectiveBreakdown> {
    check_dims(plan, tl, scenario)?;
    let freqs = scenario.frequencies_hz();
    let df = scenario.df_hz();
    let mammals = scenario.mammals();
    let dt = scenario.ship().displacement_mt;
    let nm = mammals.len();

    let mut per_leg_mammal = vec![0.0; plan.len() * nm];
    for (i, &v) in plan.iter().enumerate() {
        for j in 0..nm {
            let gram = scenario.audiogram_of(j);
            let row = tl.row(i, j);
            per_leg_mammal[i * nm + j] = freqs
                .iter()
                .zip(df)
                .zip(row)
                .map(|((&f, &w), &tl_db)| {
                    let nl = super::received_level(source_level_unchecked(v, dt, f), tl_db);
                    spl_to_intensity(nl - gram.threshold(f)) * w
                })
                .sum();
        }
    }

    let per_leg: Vec<f64> = (0..plan.len())
        .map(|i| per_leg_mammal[i * nm..(i + 1) * nm].iter().sum())
        .collect();
    let per_mammal: Vec<(usize, f64)> = mammals
        .iter()
        .enumerate()
        .map(|(j, m)| (m.id, (0..plan.len()).map(|i| per_leg_mammal[i * nm + j]).sum()))
        .collect();
    let total_intensity: f64 = per_leg.iter().sum();
    Ok(NoiseObjectiveBreakdown {
        total_intensity,
        per_mammal,
        per_leg,
        per_leg_mammal,
        total_db: intensity_to_db(total_intensity),
    })
}

/// Fast J1 evaluator for the optimizer.
///
/// Since 10^(NLS/10) carries speed only through (v/10)^5, each leg reduces to
/// one coefficient `K_i` and J1 = Σ K_i·(v_i/10)^5.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseModel {
    leg_coeff: Vec<f64>,
}

impl NoiseModel {
    pub fn new(tl: &TlTensor, scenario: &Scenario) -> Result<Self> {
        tl.check_matches(scenario)?;
        let freqs = scenario.frequencies_hz();
        let df = scenario.df_hz();
        let dt = scenario.ship().displacement_mt;
        let nm = scenario.mammals().len();
        let leg_coeff = (0..scenario.n_legs())
            .map(|i| {
                (0..nm)
                    .map(|j| {
                        let gram = scenario.audiogram_of(j);
                        freqs
                            .iter()
                            .zip(df)
                            .zip(tl.row(i, j))
                            .map(|((&f, &w), &tl_db)| {
                                let e = source_level_unchecked(10.0, dt, f) - tl_db - gram.threshold(f);
                                I0_W_M2 * db_to_power(e) * w
                            })
                            .sum::<f64>()
                    })
                    .sum()
            })
            .collect();
        Ok(NoiseModel { leg_coeff })
    }

    pub fn leg_coefficients(&self) -> &[f64] {
        &self.leg_coeff
    }

    /// J1 in W/m². `plan` must have one speed per leg.
    #[inline]
    pub fn j1(&self, plan: &[f64]) -> f64 {
        debug_assert_eq!(plan.len(), self.leg_coeff.len());
        self.leg_coeff
            .iter()
            .zip(plan)
            .map(|(k, v)| {
                let x = v / 10.0;
                k * (x * x * x * x * x)
            })
            .sum()
    }
}

/// Broadband received level at mammal `j` while the ship radiates from each
/// waypoint: 10·log10 Σ_f 10^(NL(i, j, f)/10), one value per leg.
pub fn received_spl_by_leg(plan: &[f64], tl: &TlTensor, scenario: &Scenario, j: usize) -> Result<Vec<f64>> {
    check_dims(plan, tl, scenario)?;
    if j >= scenario.mammals().len() {
        return Err(Error::invalid("mammal index", alloc::format!("{j} is out of range")));
    }
    let dt = scenario.ship().displacement_mt;
    Ok(plan
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let s: f64 = scenario
                .frequencies_hz()
                .iter()
                .zip(tl.row(i, j))
                .map(|(&f, &t)| db_to_power(source_level_unchecked(v, dt, f) - t))
                .sum();
            10.0 * log10(s)
        })
        .collect())
}

/// Peak of [`received_spl_by_leg`] over the voyage, dB re 1 µPa.
pub fn peak_received_spl(plan: &[f64], tl: &TlTensor, scenario: &Scenario, j: usize) -> Result<f64> {
    Ok(received_spl_by_leg(plan, tl, scenario, j)?
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max))
}
