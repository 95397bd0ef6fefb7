//! Model-versus-tank resistance check.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use quietvoyage_core::env::{ShipCharacteristics, WaterProperties};
use quietvoyage_core::fuel::{total_resistance, ResidualChart};

use crate::error::{AppError, AppResult};
use crate::io;
use crate::scenario_file::{build_ship, load_chart, ShipSpec, TableSource, WaterSpec};

/// Hull, water and chart for a validation case. Paths resolve against the
/// case file's directory.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    pub ship: ShipSpec,
    pub water: WaterSpec,
    pub residual_chart: TableSource<(f64, f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct ValidationCase {
    pub ship: ShipCharacteristics,
    pub water: WaterProperties,
    pub chart: ResidualChart,
}

pub fn load_case(path: &Path) -> AppResult<ValidationCase> {
    let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    let file: CaseFile = serde_json::from_str(&text).map_err(|e| AppError::parse(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    Ok(ValidationCase {
        ship: build_ship(&file.ship, base)?,
        water: WaterProperties {
            density_kg_m3: file.water.density_kg_m3,
            kinematic_viscosity_m2_s: file.water.kinematic_viscosity_m2_s,
        },
        chart: load_chart(&file.residual_chart, base)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedCheck {
    pub speed_kt: f64,
    pub measured_kn: f64,
    pub model_kn: f64,
    /// 100·(model − measured)/measured.
    pub error_percent: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub dataset: PathBuf,
    pub rows: Vec<SpeedCheck>,
    pub max_abs_error_percent: f64,
}

impl ValidationReport {
    pub fn passes(&self, threshold_percent: f64) -> bool {
        self.max_abs_error_percent <= threshold_percent
    }

    pub fn render(&self) -> String {
        let mut s = format!("resistance validation against {}\n", self.dataset.display());
        s.push_str("speed_kt  measured_kn  model_kn  error_pct\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{:8.2}  {:11.4}  {:8.4}  {:+9.4}\n",
                r.speed_kt, r.measured_kn, r.model_kn, r.error_percent
            ));
        }
        s.push_str(&format!("max abs error: {:.4}%\n", self.max_abs_error_percent));
        s
    }
}

/// Compares the resistance model with every row of `dataset`.
pub fn validate_resistance(dataset: &Path, case: &ValidationCase) -> AppResult<ValidationReport> {
    let data = io::read_pairs(dataset, io::RESISTANCE_HEADER)?;
    let mut rows = Vec::with_capacity(data.len());
    for (v, measured) in data {
        if !(measured > 0.0) {
            return Err(AppError::parse(
                dataset,
                format!("resistance at {v} kt must be positive"),
            ));
        }
        let model = total_resistance(v, &case.ship, &case.chart, &case.water)?.r_total_n / 1000.0;
        rows.push(SpeedCheck {
            speed_kt: v,
            measured_kn: measured,
            model_kn: model,
            error_percent: 100.0 * (model - measured) / measured,
        });
    }
    let max = rows.iter().map(|r| r.error_percent.abs()).fold(0.0, f64::max);
    Ok(ValidationReport {
        dataset: dataset.to_path_buf(),
        rows,
        max_abs_error_percent: max,
    })
}
