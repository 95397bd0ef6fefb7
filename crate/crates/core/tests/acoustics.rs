mod common;

use common::{audiograms, chart, mammal, ship};
use quietvoyage_core::acoustics::{precompute_tl_tensor, transmission_loss, Medium, PropagationConfig};
use quietvoyage_core::env::{
    log_frequency_grid, BathymetryProfile, Route, Scenario, ScenarioParts, SoundSpeedProfile, VoyageConstraints,
    WaterProperties,
};

fn shelf() -> Scenario {
    shelf_with(&[(0.0, 120.0), (10.0, 90.0), (20.0, 150.0)])
}

fn shelf_with(bathymetry: &[(f64, f64)]) -> Scenario {
    Scenario::new(ScenarioParts {
        route: Route::new(20.0, 11).unwrap(),
        bathymetry: BathymetryProfile::new(bathymetry).unwrap(),
        ssp: SoundSpeedProfile::new(&[(0.0, 1510.0), (40.0, 1505.0), (150.0, 1495.0)]).unwrap(),
        mammals: vec![mammal(0, 6.3), mammal(1, 14.0)],
        audiograms: audiograms(),
        ship: ship(),
        residual_chart: chart(),
        constraints: VoyageConstraints {
            eta_h: 2.0,
            v_min_kt: 8.0,
            v_max_kt: 22.0,
        },
        frequencies_hz: log_frequency_grid(20.0, 2000.0, 2),
        source_depth_m: 6.0,
        water: WaterProperties::default(),
        rng_seed: 0,
    })
    .unwrap()
}

#[test]
fn tensor_is_bit_identical_across_runs() {
    let s = shelf();
    let cfg = PropagationConfig::default();
    let a = precompute_tl_tensor(&s, &cfg).unwrap();
    let b = precompute_tl_tensor(&s, &cfg).unwrap();
    assert!(a
        .values()
        .iter()
        .zip(b.values())
        .all(|(x, y)| x.to_bits() == y.to_bits()));
}

fn refinement_changes(s: &Scenario) -> Vec<f64> {
    let base = PropagationConfig::default();
    let mut fine = base;
    fine.fan.n_rays = 2 * base.fan.n_rays - 1;
    let a = precompute_tl_tensor(s, &base).unwrap();
    let b = precompute_tl_tensor(s, &fine).unwrap();
    let mut d: Vec<f64> = a.values().iter().zip(b.values()).map(|(x, y)| (x - y).abs()).collect();
    d.sort_by(f64::total_cmp);
    d
}

#[test]
fn doubling_the_fan_barely_moves_tl_in_isovelocity_water() {
    let mut s = shelf_with(&[(0.0, 300.0), (20.0, 300.0)]);
    s = Scenario::new(ScenarioParts {
        ssp: SoundSpeedProfile::isovelocity(1500.0).unwrap(),
        ..s.into_parts()
    })
    .unwrap();
    let d = refinement_changes(&s);
    assert!(d[d.len() - 1] <= 0.5, "largest change {} dB", d[d.len() - 1]);
}

#[test]
fn doubling_the_fan_moves_refracting_shelf_tl_little() {
    let d = refinement_changes(&shelf());
    let p90 = d[d.len() * 9 / 10];
    let worst = d[d.len() - 1];
    assert!(p90 <= 0.5 && worst <= 1.5, "p90 {p90} dB, largest {worst} dB");
}

#[test]
fn free_field_tl_tracks_spherical_spreading_over_three_decades() {
    let ssp = SoundSpeedProfile::isovelocity(1500.0).unwrap();
    let m = Medium::free_field(&ssp);
    let cfg = PropagationConfig {
        volume_attenuation: false,
        ..PropagationConfig::default()
    };
    for r in [100.0, 300.0, 1000.0, 3000.0, 10_000.0] {
        for f in [100.0, 1000.0] {
            let tl = transmission_loss(&m, (0.0, 1000.0), (r, 1000.0), f, &cfg).unwrap();
            assert!((tl - 20.0 * f64::log10(r)).abs() < 0.1, "r {r} f {f}: {tl}");
        }
    }
}
