#![allow(dead_code)]

use quietvoyage_core::acoustics::TlTensor;
use quietvoyage_core::env::{
    default_frequency_grid, BathymetryProfile, HearingGroup, Mammal, Route, Scenario, ScenarioParts, SfocCurve,
    ShipCharacteristics, SoundSpeedProfile, VoyageConstraints, WaterProperties,
};
use quietvoyage_core::fuel::ResidualChart;
use quietvoyage_core::noise::{Audiogram, AudiogramTable};

pub fn ship() -> ShipCharacteristics {
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

/// Smooth chart rising with speed-length ratio.
pub fn chart() -> ResidualChart {
    let mut rows = Vec::new();
    for i in 0..=12 {
        for j in 0..=3 {
            let sl = 0.1 * i as f64;
            let cp = 0.5 + 0.1 * j as f64;
            rows.push((sl, cp, 1.0e-4 * (1.0 + 4.0 * sl * sl) * (1.0 + cp)));
        }
    }
    ResidualChart::from_rows(&rows).unwrap()
}

pub fn audiograms() -> AudiogramTable {
    AudiogramTable::from_entries(HearingGroup::ALL.iter().enumerate().map(|(k, &group)| Audiogram {
        group,
        alpha0_db: 40.0 + 5.0 * k as f64,
        p1_db: 30.0,
        p2_hz: 2000.0 + 1000.0 * k as f64,
        p3_hz: 20_000.0,
        p4: 2.0,
    }))
    .unwrap()
}

pub fn mammal(id: usize, range_nm: f64) -> Mammal {
    Mammal {
        id,
        range_nm,
        depth_m: 50.0 + 10.0 * (id % 20) as f64,
        group: HearingGroup::ALL[id % 5],
    }
}

/// Flat 1000 m isovelocity sea with `n_legs` equal legs over `distance_nm`.
pub fn scenario_with(distance_nm: f64, n_legs: usize, mammals: Vec<Mammal>, eta_h: f64) -> Scenario {
    Scenario::new(ScenarioParts {
        route: Route::new(distance_nm, n_legs + 1).unwrap(),
        bathymetry: BathymetryProfile::flat(1000.0, distance_nm).unwrap(),
        ssp: SoundSpeedProfile::isovelocity(1500.0).unwrap(),
        mammals,
        audiograms: audiograms(),
        ship: ship(),
        residual_chart: chart(),
        constraints: VoyageConstraints {
            eta_h,
            v_min_kt: 8.0,
            v_max_kt: 22.0,
        },
        frequencies_hz: default_frequency_grid(),
        source_depth_m: 6.0,
        water: WaterProperties::default(),
        rng_seed: 1,
    })
    .unwrap()
}

/// As [`scenario_with`], mammal ids 0.. at the given ranges.
pub fn scenario(distance_nm: f64, n_legs: usize, mammal_ranges: &[f64], eta_h: f64) -> Scenario {
    let mammals = mammal_ranges.iter().enumerate().map(|(id, &r)| mammal(id, r)).collect();
    scenario_with(distance_nm, n_legs, mammals, eta_h)
}

/// Spherical-spreading TL from each waypoint to each mammal plus
/// `offset(waypoint, mammal id, frequency index)`.
pub fn spreading_tensor(s: &Scenario, offset: impl Fn(usize, usize, usize) -> f64) -> TlTensor {
    let route = s.route();
    let nf = s.frequencies_hz().len();
    let mut values = Vec::new();
    for i in 0..route.n_waypoints() {
        for m in s.mammals() {
            let dist = ((route.waypoint_range_nm(i) - m.range_nm).abs() * 1852.0).max(100.0);
            for k in 0..nf {
                values.push(20.0 * dist.log10() + offset(i, m.id, k));
            }
        }
    }
    TlTensor::new(
        route.n_waypoints(),
        s.mammals().iter().map(|m| m.id).collect(),
        s.frequencies_hz().to_vec(),
        values,
        0,
    )
    .unwrap()
}

/// Deterministic pseudo-random offset in [−10, 10) dB.
pub fn hash_offset(seed: u64) -> impl Fn(usize, usize, usize) -> f64 {
    move |i, j, k| {
        let mut x = seed ^ ((i as u64) << 40) ^ ((j as u64) << 20) ^ k as u64;
        x = x.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        x ^= x >> 29;
        x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
        x ^= x >> 32;
        (x >> 11) as f64 / (1u64 << 53) as f64 * 20.0 - 10.0
    }
}
