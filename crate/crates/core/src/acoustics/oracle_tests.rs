use std::vec::Vec;

use super::*;
use crate::env::{BathymetryProfile, SoundSpeedProfile};

fn iso() -> SoundSpeedProfile {
    SoundSpeedProfile::isovelocity(1500.0).unwrap()
}

fn no_absorption() -> PropagationConfig {
    PropagationConfig {
        volume_attenuation: false,
        ..PropagationConfig::default()
    }
}

fn launch(x: f64, z: f64, angle: f64) -> Launch {
    Launch {
        range_m: x,
        depth_m: z,
        angle_deg: angle,
        heading: Heading::Increasing,
    }
}

fn with_range(max_range_m: f64) -> PropagationConfig {
    let mut c = no_absorption();
    c.fan.max_range_m = Some(max_range_m);
    c
}

/// Depth of a ray at horizontal distance `r`, linearly interpolated.
fn depth_at_range(path: &[RayState], r: f64) -> Option<(f64, RayState)> {
    path.windows(2).find_map(|w| {
        (w[0].r_m <= r && r < w[1].r_m).then(|| {
            let t = (r - w[0].r_m) / (w[1].r_m - w[0].r_m);
            let mut s = w[0];
            s.q = w[0].q + t * (w[1].q - w[0].q);
            (w[0].z_m + t * (w[1].z_m - w[0].z_m), s)
        })
    })
}

#[test]
fn free_field_spreading_law() {
    let ssp = iso();
    let m = Medium::free_field(&ssp);
    let cfg = no_absorption();
    for &f in &[100.0, 1000.0] {
        let near = transmission_loss(&m, (0.0, 500.0), (1.0, 500.0), f, &cfg).unwrap();
        assert!(near.abs() < 0.15, "f={f} near={near}");
        for &r in &[100.0, 300.0, 1000.0, 3000.0, 10_000.0] {
            let tl = transmission_loss(&m, (0.0, 500.0), (r, 500.0), f, &cfg).unwrap();
            assert!((tl - 20.0 * r.log10()).abs() < 0.5, "f={f} r={r} tl={tl}");
        }
    }
    let p = field_at(&m, (0.0, 500.0), (1000.0, 500.0), 100.0, &cfg).unwrap();
    assert!((p.norm() - 1e-3).abs() < 0.06e-3);
}

#[test]
fn free_field_up_down_symmetry() {
    let ssp = iso();
    let m = Medium::free_field(&ssp);
    let cfg = no_absorption();
    for dz in [50.0, 200.0, 600.0] {
        let up = transmission_loss(&m, (0.0, 1000.0), (2000.0, 1000.0 - dz), 250.0, &cfg).unwrap();
        let dn = transmission_loss(&m, (0.0, 1000.0), (2000.0, 1000.0 + dz), 250.0, &cfg).unwrap();
        assert!((up - dn).abs() < 1e-9, "{up} {dn}");
    }
}

#[test]
fn coherent_free_field_matches_spherical_spreading() {
    let ssp = iso();
    let m = Medium::free_field(&ssp);
    let cfg = PropagationConfig {
        coherent: true,
        ..no_absorption()
    };
    let tl = transmission_loss(&m, (0.0, 500.0), (1000.0, 500.0), 200.0, &cfg).unwrap();
    assert!((tl - 60.0).abs() < 1.0, "{tl}");
}

#[test]
fn isovelocity_horizontal_ray_is_straight() {
    let ssp = iso();
    let b = BathymetryProfile::flat(200.0, 20.0).unwrap();
    let m = Medium::new(&ssp, Some(&b), true);
    let path = trace_ray(&m, launch(0.0, 100.0, 0.0), &with_range(20_000.0)).unwrap();
    assert!(path.len() > 1000);
    assert!(path.iter().all(|s| (s.z_m - 100.0).abs() < 1e-9));
    assert!(path.last().unwrap().r_m >= 20_000.0);
}

#[test]
fn isovelocity_reflections_are_specular() {
    let ssp = iso();
    let b = BathymetryProfile::flat(200.0, 20.0).unwrap();
    let m = Medium::new(&ssp, Some(&b), true);
    let path = trace_ray(&m, launch(0.0, 100.0, 10.0), &with_range(10_000.0)).unwrap();
    let mut bounces = 0;
    for w in path.windows(2) {
        if w[0].r_m == w[1].r_m && w[0].z_m == w[1].z_m {
            bounces += 1;
            assert!((w[0].rho - w[1].rho).abs() < 1e-15);
            assert!((w[0].zeta + w[1].zeta).abs() < 1e-12);
            assert!(w[0].z_m == 0.0 || w[0].z_m == 200.0);
        }
    }
    assert!(bounces >= 8, "{bounces}");
    let last = path.last().unwrap();
    assert!(last.surface_bounces >= 4 && last.bottom_bounces >= 4);
    let expected = 0.85f64.powi(last.bottom_bounces as i32) * (-1f64).powi(last.surface_bounces as i32);
    assert!((last.amplitude - expected).abs() < 1e-12);
    for s in &path {
        assert!(s.z_m >= 0.0 && s.z_m <= 200.0 + 1e-9);
        let c = 1500.0;
        assert!(((c * s.rho).powi(2) + (c * s.zeta).powi(2) - 1.0).abs() < 1e-6);
    }
}

#[test]
fn constant_gradient_ray_is_circular_arc() {
    let g = 0.05;
    let ssp = SoundSpeedProfile::new(&[(0.0, 1500.0), (2000.0, 1500.0 + g * 2000.0)]).unwrap();
    let m = Medium::free_field(&ssp);
    let (z0, th0) = (1000.0, 5.0f64.to_radians());
    let c0 = 1500.0 + g * z0;
    let path = trace_ray(&m, launch(0.0, z0, 5.0), &with_range(5_000.0)).unwrap();
    // Centre of curvature lies where c extrapolates to zero.
    let zc = -1500.0 / g;
    let radius = c0 / (g * th0.cos());
    let rc = c0 * th0.tan() / g;
    let mut worst = 0.0f64;
    for s in &path {
        let d = ((s.r_m - rc).powi(2) + (s.z_m - zc).powi(2)).sqrt();
        worst = worst.max((d - radius).abs() / radius);
    }
    assert!(worst < 1e-3 * 1e-3, "relative radius error {worst}");
    assert!(path.last().unwrap().r_m >= 5000.0);
}

/// `q` is the normal spread per radian, so two neighbouring rays must be
/// separated by about `|q|·δθ` along the normal.
fn check_spreading(m: &Medium<'_>, z0: f64, angle: f64, ranges: &[f64]) {
    let d = 1e-4;
    let cfg = with_range(ranges.iter().cloned().fold(0.0, f64::max) + 100.0);
    let a = trace_ray(m, launch(0.0, z0, angle), &cfg).unwrap();
    let b = trace_ray(m, launch(0.0, z0, angle + d), &cfg).unwrap();
    for &r in ranges {
        let (za, sa) = depth_at_range(&a, r).unwrap();
        let (zb, sb) = depth_at_range(&b, r).unwrap();
        assert_eq!(
            sa.surface_bounces + sa.bottom_bounces,
            sb.surface_bounces + sb.bottom_bounces
        );
        let (c, _) = m.sound_speed(za);
        let dn = (zb - za).abs() * (c * sa.rho).abs();
        let predicted = sa.q.abs() * d.to_radians();
        assert!(
            (dn - predicted).abs() <= 0.02 * predicted + 1e-6,
            "angle {angle} r {r}: separation {dn} vs |q|dθ {predicted}"
        );
    }
}

#[test]
fn dynamic_spreading_matches_neighbouring_rays_through_reflections() {
    let ssp = SoundSpeedProfile::new(&[(0.0, 1480.0), (400.0, 1520.0)]).unwrap();
    let b = BathymetryProfile::flat(400.0, 20.0).unwrap();
    let m = Medium::new(&ssp, Some(&b), true);
    check_spreading(&m, 50.0, 8.0, &[1000.0, 4000.0, 9000.0, 15_000.0]);
    check_spreading(&m, 300.0, -12.0, &[1500.0, 6000.0, 12_000.0]);
}

#[test]
fn dynamic_spreading_matches_neighbouring_rays_across_kinks() {
    let ssp = SoundSpeedProfile::new(&[(0.0, 1520.0), (300.0, 1495.0), (800.0, 1490.0), (3000.0, 1530.0)]).unwrap();
    let b = BathymetryProfile::flat(3000.0, 30.0).unwrap();
    let m = Medium::new(&ssp, Some(&b), true);
    check_spreading(&m, 100.0, 10.0, &[2000.0, 8000.0, 20_000.0]);
    check_spreading(&m, 900.0, -4.0, &[3000.0, 10_000.0]);
}

#[test]
fn dynamic_spreading_with_sloping_bottom() {
    let ssp = SoundSpeedProfile::new(&[(0.0, 1500.0), (500.0, 1490.0)]).unwrap();
    let b = BathymetryProfile::new(&[(0.0, 300.0), (10.0, 150.0)]).unwrap();
    let m = Medium::new(&ssp, Some(&b), true);
    check_spreading(&m, 100.0, 15.0, &[2000.0, 5000.0, 9000.0]);
}

#[test]
fn launch_outside_water_is_error() {
    let ssp = iso();
    let b = BathymetryProfile::flat(200.0, 20.0).unwrap();
    let m = Medium::new(&ssp, Some(&b), true);
    let cfg = no_absorption();
    assert!(trace_ray(&m, launch(0.0, 250.0, 0.0), &cfg).is_err());
    assert!(trace_ray(&m, launch(0.0, 0.0, 0.0), &cfg).is_err());
    let mut bad = cfg;
    bad.fan.step_m = 0.0;
    assert!(trace_ray(&m, launch(0.0, 100.0, 0.0), &bad).is_err());
    assert!(transmission_loss(&m, (0.0, 100.0), (1000.0, 300.0), 100.0, &cfg).is_err());
}

fn flat_scene(depth: f64) -> (SoundSpeedProfile, BathymetryProfile) {
    (
        SoundSpeedProfile::new(&[(0.0, 1500.0), (5000.0, 1500.0)]).unwrap(),
        BathymetryProfile::flat(depth, 40.0).unwrap(),
    )
}

#[test]
fn reciprocity_in_flat_waveguide() {
    let (ssp, b) = flat_scene(300.0);
    let m = Medium::new(&ssp, Some(&b), true);
    let cfg = PropagationConfig::default();
    for (za, zb, r) in [(20.0, 150.0, 3000.0), (60.0, 250.0, 8000.0), (6.0, 30.0, 15_000.0)] {
        for f in [50.0, 500.0] {
            let ab = transmission_loss(&m, (10_000.0, za), (10_000.0 + r, zb), f, &cfg).unwrap();
            let ba = transmission_loss(&m, (10_000.0, zb), (10_000.0 + r, za), f, &cfg).unwrap();
            assert!((ab - ba).abs() <= 0.5, "z {za}->{zb} r {r} f {f}: {ab} vs {ba}");
        }
    }
}

/// Incoherent image-source sum for an isovelocity waveguide, restricted to
/// paths the fan can launch.
fn image_sum_tl(depth: f64, zs: f64, zr: f64, r: f64, rs: f64, rb: f64, max_angle_deg: f64) -> f64 {
    let mut total = 0.0;
    for n in -200i32..=200 {
        for z_img in [2.0 * n as f64 * depth + zr, 2.0 * n as f64 * depth - zr] {
            let dz = z_img - zs;
            if dz.abs().atan2(r).to_degrees() > max_angle_deg {
                continue;
            }
            let (lo, hi) = if z_img < zs { (z_img, zs) } else { (zs, z_img) };
            let (mut surf, mut bot) = (0, 0);
            let k0 = (lo / depth).floor() as i64 - 1;
            let k1 = (hi / depth).ceil() as i64 + 1;
            for k in k0..=k1 {
                let b = k as f64 * depth;
                if b > lo && b < hi {
                    if k % 2 == 0 {
                        surf += 1;
                    } else {
                        bot += 1;
                    }
                }
            }
            total += (rs * rs).powi(surf) * (rb * rb).powi(bot) / (r * r + dz * dz);
        }
    }
    -10.0 * total.log10()
}

#[test]
fn incoherent_waveguide_matches_image_sum() {
    let (ssp, b) = flat_scene(300.0);
    let m = Medium::new(&ssp, Some(&b), true);
    let mut cfg = no_absorption();
    cfg.fan.n_rays = 721;
    for (zs, zr, r) in [
        (20.0, 150.0, 3000.0),
        (150.0, 8.0, 3000.0),
        (60.0, 250.0, 8000.0),
        (6.0, 30.0, 15_000.0),
    ] {
        let oracle = image_sum_tl(300.0, zs, zr, r, -1.0, 0.85, 45.0);
        let tl = transmission_loss(&m, (0.0, zs), (r, zr), 1000.0, &cfg).unwrap();
        assert!(
            (tl - oracle).abs() < 0.1,
            "z {zs}->{zr} r {r}: {tl} vs image sum {oracle}"
        );
    }
}

#[test]
fn absorption_never_lowers_tl() {
    let (ssp, b) = flat_scene(200.0);
    let m = Medium::new(&ssp, Some(&b), true);
    let rx: Vec<(f64, f64)> = (1..20).map(|k| (k as f64 * 1500.0, 30.0 + 8.0 * k as f64)).collect();
    let freqs = [10.0, 100.0, 1000.0, 10_000.0];
    let on = transmission_loss_many(&m, (0.0, 6.0), &rx, &freqs, &PropagationConfig::default()).unwrap();
    let off = transmission_loss_many(&m, (0.0, 6.0), &rx, &freqs, &no_absorption()).unwrap();
    assert!(on.iter().zip(&off).all(|(a, b)| a >= b));
    assert!(on.iter().zip(&off).any(|(a, b)| a > b));
}

#[test]
fn receivers_steeper_than_the_fan_get_the_direct_path() {
    let ssp = iso();
    let m = Medium::free_field(&ssp);
    let cfg = no_absorption();
    for (dx, dz) in [(0.0, 24.0), (0.0, -300.0), (10.0, 100.0), (-40.0, 90.0)] {
        let tl = transmission_loss(&m, (1000.0, 500.0), (1000.0 + dx, 500.0 + dz), 100.0, &cfg).unwrap();
        let oracle = 10.0 * f64::log10(dx * dx + dz * dz);
        assert!((tl - oracle).abs() < 1e-9, "({dx}, {dz}): {tl} vs {oracle}");
    }
    let (ssp, b) = flat_scene(200.0);
    let m = Medium::new(&ssp, Some(&b), true);
    let cfg = PropagationConfig::default();
    let above = transmission_loss(&m, (1000.0, 6.0), (1000.0, 30.0), 100.0, &cfg).unwrap();
    assert!(above < 20.0 * f64::log10(24.0) + 0.01, "{above}");
}

#[test]
fn upward_refraction_leaves_near_surface_shadow() {
    // Sound speed increasing towards the surface bends rays downward.
    let ssp = SoundSpeedProfile::new(&[(0.0, 1540.0), (1000.0, 1500.0), (4000.0, 1510.0)]).unwrap();
    let b = BathymetryProfile::flat(4000.0, 40.0).unwrap();
    let m = Medium::new(&ssp, Some(&b), true);
    let cfg = PropagationConfig::default();
    let r = 8000.0;
    let shallow = transmission_loss(&m, (0.0, 300.0), (r, 10.0), 200.0, &cfg).unwrap();
    let mid = transmission_loss(&m, (0.0, 300.0), (r, 400.0), 200.0, &cfg).unwrap();
    assert!(shallow >= mid, "shallow {shallow} mid {mid}");
}

#[test]
fn tracing_is_deterministic() {
    let (ssp, b) = flat_scene(200.0);
    let m = Medium::new(&ssp, Some(&b), true);
    let rx = [(20_000.0, 40.0), (35_000.0, 100.0)];
    let f = [20.0, 200.0, 2000.0];
    let a = transmission_loss_many(&m, (0.0, 6.0), &rx, &f, &PropagationConfig::default()).unwrap();
    let c = transmission_loss_many(&m, (0.0, 6.0), &rx, &f, &PropagationConfig::default()).unwrap();
    assert!(a.iter().zip(&c).all(|(x, y)| x.to_bits() == y.to_bits()));
}
