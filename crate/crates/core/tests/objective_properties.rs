mod common;

use common::{hash_offset, mammal, scenario, scenario_with, spreading_tensor};
use proptest::prelude::*;
use quietvoyage_core::acoustics::TlTensor;
use quietvoyage_core::fuel::{fuel_objective, FuelModel};
use quietvoyage_core::noise::{noise_objective, source_level, NoiseModel};

fn plan(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(8.0f64..22.0, n)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn factorized_j1_matches_literal_sum(seed: u64, v in plan(6), r in 1.0f64..99.0) {
        let s = scenario(100.0, 6, &[r, 100.0 - r], 20.0);
        let tl = spreading_tensor(&s, hash_offset(seed));
        let literal = noise_objective(&v, &tl, &s).unwrap();
        let fast = NoiseModel::new(&tl, &s).unwrap().j1(&v);
        prop_assert!(rel(literal.total_intensity, fast) < 1e-12);
        let by_leg: f64 = literal.per_leg.iter().sum();
        let by_mammal: f64 = literal.per_mammal.iter().map(|p| p.1).sum();
        prop_assert!(rel(by_leg, literal.total_intensity) < 1e-12);
        prop_assert!(rel(by_mammal, literal.total_intensity) < 1e-12);
    }

    #[test]
    fn j1_is_additive_over_disjoint_mammal_sets(
        seed: u64,
        v in plan(5),
        ranges in prop::collection::vec(0.0f64..50.0, 2..8),
        split in 1usize..7,
    ) {
        let split = split.min(ranges.len() - 1);
        let all: Vec<_> = ranges.iter().enumerate().map(|(id, &r)| mammal(id, r)).collect();
        let j1 = |ms: Vec<_>| {
            let s = scenario_with(50.0, 5, ms, 10.0);
            let tl = spreading_tensor(&s, hash_offset(seed));
            noise_objective(&v, &tl, &s).unwrap().total_intensity
        };
        let whole = j1(all.clone());
        let parts = j1(all[..split].to_vec()) + j1(all[split..].to_vec());
        prop_assert!(rel(whole, parts) < 1e-9);
    }

    #[test]
    fn raising_any_leg_speed_raises_j1(seed: u64, v in plan(6), leg in 0usize..6, dv in 0.01f64..5.0) {
        let s = scenario(60.0, 6, &[30.0], 8.0);
        let tl = spreading_tensor(&s, hash_offset(seed));
        let model = NoiseModel::new(&tl, &s).unwrap();
        let mut faster = v.clone();
        faster[leg] += dv;
        prop_assert!(model.j1(&faster) > model.j1(&v));
        let lit = |p: &[f64]| noise_objective(p, &tl, &s).unwrap().total_intensity;
        prop_assert!(lit(&faster) > lit(&v));
    }

    #[test]
    fn leg_i_uses_waypoint_i(leg in 0usize..5, v in plan(5), dv in 0.5f64..3.0) {
        let s = scenario(50.0, 5, &[25.0], 10.0);
        // Sentinel: only waypoint `leg` is audible.
        let mut values = Vec::new();
        let nf = s.frequencies_hz().len();
        for i in 0..s.route().n_waypoints() {
            values.extend(std::iter::repeat(if i == leg { 0.0 } else { 1e4 }).take(nf));
        }
        let tl = TlTensor::new(6, vec![0], s.frequencies_hz().to_vec(), values, 0).unwrap();
        let b = noise_objective(&v, &tl, &s).unwrap();
        for (i, &x) in b.per_leg.iter().enumerate() {
            if i == leg {
                prop_assert!(x > 0.0);
            } else {
                prop_assert!(x < 1e-300 * b.per_leg[leg].max(1.0));
            }
        }
        let mut other = v.clone();
        other[(leg + 1) % 5] += dv;
        prop_assert!(rel(noise_objective(&other, &tl, &s).unwrap().total_intensity, b.total_intensity) < 1e-12);
    }

    #[test]
    fn source_spectrum_slope(v in 0.5f64..40.0, dt in 100.0f64..5e5, f1 in 10.0f64..1e4, f2 in 10.0f64..1e4) {
        let d = source_level(v, dt, f2).unwrap() - source_level(v, dt, f1).unwrap();
        prop_assert!((d + 20.0 * (f2 / f1).log10()).abs() < 1e-10);
    }

    #[test]
    fn constant_speed_fuel_rises_with_speed(a in 8.0f64..22.0, b in 8.0f64..22.0) {
        prop_assume!((a - b).abs() > 1e-6);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let s = scenario(100.0, 4, &[50.0], 20.0);
        prop_assert!(fuel_objective(&[lo; 4], &s).unwrap() < fuel_objective(&[hi; 4], &s).unwrap());
    }

    #[test]
    fn eta_exact_constant_plan_burns_eta_times_rate(eta in 5.0f64..12.0) {
        let s = scenario(100.0, 4, &[50.0], eta);
        let v = 100.0 / eta;
        let j2 = fuel_objective(&[v; 4], &s).unwrap();
        let rate = FuelModel::new(&s).point(v).unwrap().fuel_rate_mt_h;
        prop_assert!(rel(j2, eta * rate) < 1e-12);
    }
}

#[test]
fn default_ship_reaches_top_speed_within_rated_power() {
    let s = scenario(100.0, 4, &[50.0], 20.0);
    let p = FuelModel::new(&s).point(s.constraints().v_max_kt).unwrap();
    assert!(p.brake_power_kw <= s.ship().max_power_kw, "{p:?}");
}
