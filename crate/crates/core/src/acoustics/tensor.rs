use alloc::format;
use alloc::vec::Vec;

use super::field::transmission_loss_many;
use super::{Medium, PropagationConfig};
use crate::env::Scenario;
use crate::math::floor;
use crate::units::METRES_PER_NM;
use crate::{Error, Result};

/// Transmission loss (dB re 1 m) indexed by waypoint, mammal and frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct TlTensor {
    n_waypoints: usize,
    mammal_ids: Vec<usize>,
    frequencies_hz: Vec<f64>,
    values: Vec<f64>,
    capped: usize,
}

impl TlTensor {
    /// `values` is row-major `[waypoint][mammal][frequency]`. `capped` is the
    /// number of entries that hit the shadow-zone cap.
    pub fn new(
        n_waypoints: usize,
        mammal_ids: Vec<usize>,
        frequencies_hz: Vec<f64>,
        values: Vec<f64>,
        capped: usize,
    ) -> Result<Self> {
        let expected = n_waypoints * mammal_ids.len() * frequencies_hz.len();
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                what: "TL tensor values",
                expected,
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("TL tensor", "entries must be finite"));
        }
        Ok(TlTensor {
            n_waypoints,
            mammal_ids,
            frequencies_hz,
            values,
            capped,
        })
    }

    pub fn n_waypoints(&self) -> usize {
        self.n_waypoints
    }

    pub fn n_mammals(&self) -> usize {
        self.mammal_ids.len()
    }

    pub fn mammal_ids(&self) -> &[usize] {
        &self.mammal_ids
    }

    pub fn frequencies_hz(&self) -> &[f64] {
        &self.frequencies_hz
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn capped_count(&self) -> usize {
        self.capped
    }

    #[inline]
    pub fn get(&self, waypoint: usize, mammal: usize, freq: usize) -> f64 {
        self.row(waypoint, mammal)[freq]
    }

    /// TL over the frequency grid for one waypoint and mammal.
    #[inline]
    pub fn row(&self, waypoint: usize, mammal: usize) -> &[f64] {
        let nf = self.frequencies_hz.len();
        let start = (waypoint * self.mammal_ids.len() + mammal) * nf;
        &self.values[start..start + nf]
    }

    /// Fails unless the axes match the scenario's waypoints, mammals and grid.
    pub fn check_matches(&self, scenario: &Scenario) -> Result<()> {
        let nw = scenario.route().n_waypoints();
        if self.n_waypoints != nw {
            return Err(Error::DimensionMismatch {
                what: "TL tensor waypoints",
                expected: nw,
                got: self.n_waypoints,
            });
        }
        let ids_match = scenario.mammals().len() == self.mammal_ids.len()
            && scenario
                .mammals()
                .iter()
                .zip(&self.mammal_ids)
                .all(|(m, id)| m.id == *id);
        if !ids_match {
            return Err(Error::invalid("TL tensor", "mammal axis does not match the scenario"));
        }
        if self.frequencies_hz.as_slice() != scenario.frequencies_hz() {
            return Err(Error::invalid(
                "TL tensor",
                "frequency axis does not match the scenario",
            ));
        }
        Ok(())
    }
}

/// TL from one waypoint to every mammal, row-major `[mammal][frequency]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TlRow {
    pub values: Vec<f64>,
    pub capped: usize,
}

pub fn tl_row(scenario: &Scenario, config: &PropagationConfig, waypoint: usize) -> Result<TlRow> {
    let route = scenario.route();
    if waypoint >= route.n_waypoints() {
        return Err(Error::invalid(
            "waypoint",
            format!("index {waypoint} is out of range (n = {})", route.n_waypoints()),
        ));
    }
    let medium = Medium::of(scenario);
    let source = (
        route.waypoint_range_nm(waypoint) * METRES_PER_NM,
        scenario.source_depth_m(),
    );
    let receivers: Vec<(f64, f64)> = scenario
        .mammals()
        .iter()
        .map(|m| (m.range_nm * METRES_PER_NM, m.depth_m))
        .collect();
    let values = transmission_loss_many(&medium, source, &receivers, scenario.frequencies_hz(), config)?;
    let capped = values.iter().filter(|&&v| v >= config.tl_cap_db).count();
    Ok(TlRow { values, capped })
}

/// Assembles a tensor from per-waypoint rows in waypoint order.
pub(crate) fn assemble(scenario: &Scenario, rows: Vec<TlRow>) -> Result<TlTensor> {
    let capped = rows.iter().map(|r| r.capped).sum();
    let values = rows.into_iter().flat_map(|r| r.values).collect();
    TlTensor::new(
        scenario.route().n_waypoints(),
        scenario.mammals().iter().map(|m| m.id).collect(),
        scenario.frequencies_hz().to_vec(),
        values,
        capped,
    )
}

/// TL for every (waypoint, mammal, frequency) triple, sequentially.
pub fn precompute_tl_tensor(scenario: &Scenario, config: &PropagationConfig) -> Result<TlTensor> {
    let rows = (0..scenario.route().n_waypoints())
        .map(|i| tl_row(scenario, config, i))
        .collect::<Result<Vec<_>>>()?;
    assemble(scenario, rows)
}

impl TlTensor {
    /// Assembles rows computed elsewhere (for example in parallel).
    pub fn from_rows(scenario: &Scenario, rows: Vec<TlRow>) -> Result<Self> {
        assemble(scenario, rows)
    }
}

/// Range-depth receiver grid ahead of a waypoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub range_pitch_m: f64,
    pub depth_pitch_m: f64,
    /// Horizontal extent ahead of the source.
    pub range_extent_m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TlGridCell {
    /// Absolute along-track position, m.
    pub range_m: f64,
    pub depth_m: f64,
    pub tl_db: f64,
}

/// TL field at one frequency on a grid ahead of waypoint `waypoint`. Cells
/// lie at multiples of the pitches; cells on or below the seabed are omitted.
pub fn tl_grid(
    scenario: &Scenario,
    config: &PropagationConfig,
    waypoint: usize,
    frequency_hz: f64,
    grid: &GridSpec,
) -> Result<Vec<TlGridCell>> {
    let route = scenario.route();
    if waypoint >= route.n_waypoints() {
        return Err(Error::invalid(
            "waypoint",
            format!("index {waypoint} is out of range (n = {})", route.n_waypoints()),
        ));
    }
    if !(grid.range_pitch_m > 0.0 && grid.depth_pitch_m > 0.0 && grid.range_extent_m > 0.0) {
        return Err(Error::invalid("grid", "pitches and extent must be positive"));
    }
    let medium = Medium::of(scenario);
    let x0 = route.waypoint_range_nm(waypoint) * METRES_PER_NM;
    let n_r = floor(grid.range_extent_m / grid.range_pitch_m + 1e-9) as usize;
    let mut receivers = Vec::new();
    for i in 1..=n_r {
        let x = x0 + i as f64 * grid.range_pitch_m;
        let mut k = 1;
        loop {
            let z = k as f64 * grid.depth_pitch_m;
            if !medium.contains(x, z) {
                break;
            }
            receivers.push((x, z));
            k += 1;
        }
    }
    let mut cfg = *config;
    if cfg.fan.max_range_m.is_none() {
        cfg.fan.max_range_m = Some(grid.range_extent_m + grid.range_pitch_m);
    }
    let tl = transmission_loss_many(
        &medium,
        (x0, scenario.source_depth_m()),
        &receivers,
        &[frequency_hz],
        &cfg,
    )?;
    Ok(receivers
        .into_iter()
        .zip(tl)
        .map(|((range_m, depth_m), tl_db)| TlGridCell {
            range_m,
            depth_m,
            tl_db,
        })
        .collect())
}
