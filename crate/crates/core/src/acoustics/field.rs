use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::ray::{Heading, Launch, RayState, RayTracer};
use super::{thorp_attenuation_db_per_km, Medium, PropagationConfig};
use crate::math::{atan2, cos, exp, floor, log10, powf, sqrt};
use crate::{Error, Result};

const SQRT_2PI: f64 = 2.506_628_274_631_000_2;
const BEAM_CUTOFF_SIGMAS: f64 = 5.0;

struct Band {
    f: f64,
    omega: f64,
    /// dB per metre of arc.
    alpha: f64,
    /// Width floor π·λ at the source sound speed.
    pi_lambda: f64,
}

/// Summed field at a set of receivers, row-major `[receiver][frequency]`.
pub(crate) struct FieldSum {
    pub intensity: Vec<f64>,
    pub pressure: Option<Vec<Complex64>>,
}

impl FieldSum {
    pub(crate) fn power(&self, idx: usize) -> f64 {
        match &self.pressure {
            Some(p) => p[idx].norm_sqr(),
            None => self.intensity[idx],
        }
    }
}

/// Beam summation from one source to many receivers `(range m, depth m)`.
///
/// Receivers beyond the tracing limit receive nothing. Receivers steeper than
/// the edge of the launch fan, including those straight above or below the
/// source, receive the direct path with spherical spreading instead.
pub(crate) fn sum_beams(
    medium: &Medium<'_>,
    config: &PropagationConfig,
    source: (f64, f64),
    receivers: &[(f64, f64)],
    freqs: &[f64],
) -> Result<FieldSum> {
    config.validate()?;
    if !medium.contains(source.0, source.1) {
        return Err(Error::invalid(
            "source",
            format!("({} m, {} m) is outside the water column", source.0, source.1),
        ));
    }
    for &(x, z) in receivers {
        if !medium.contains(x, z) {
            return Err(Error::invalid(
                "receiver",
                format!("({x} m, {z} m) is outside the water column"),
            ));
        }
    }
    if let Some(f) = freqs.iter().find(|f| !(**f > 0.0)) {
        return Err(Error::invalid("frequency", format!("must be positive, got {f}")));
    }

    let nf = freqs.len();
    let furthest = receivers.iter().map(|r| (r.0 - source.0).abs()).fold(0.0, f64::max);
    let max_range = config.fan.max_range_m.unwrap_or(furthest + 1000.0);

    let (c0, _) = medium.sound_speed(source.1);
    let bands: Vec<Band> = freqs
        .iter()
        .map(|&f| Band {
            f,
            omega: 2.0 * PI * f,
            alpha: if config.volume_attenuation {
                thorp_attenuation_db_per_km(f) / 1000.0
            } else {
                0.0
            },
            pi_lambda: PI * c0 / f,
        })
        .collect();

    let mut out = FieldSum {
        intensity: vec![0.0; receivers.len() * nf],
        pressure: config
            .coherent
            .then(|| vec![Complex64::new(0.0, 0.0); receivers.len() * nf]),
    };

    let dtheta = config.fan.spacing_rad();
    let angles = config.fan.angles_deg();
    for heading in [Heading::Increasing, Heading::Decreasing] {
        let sign = heading.sign();
        let mut order: Vec<(f64, usize)> = receivers
            .iter()
            .enumerate()
            .map(|(k, r)| (sign * (r.0 - source.0), k))
            .filter(|(d, _)| *d > 0.0 && *d <= max_range)
            .collect();
        if order.is_empty() {
            continue;
        }
        order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        for &angle in &angles {
            let launch = Launch {
                range_m: source.0,
                depth_m: source.1,
                angle_deg: angle,
                heading,
            };
            let cos0 = cos(angle.to_radians());
            let mut tracer = RayTracer::new(
                medium,
                launch,
                config.fan.step_m,
                max_range,
                config.surface_reflection,
                config.bottom_reflection,
            )?;
            let mut prev = tracer.next().expect("tracer yields the launch state");
            let mut next_rx = 0;
            for cur in tracer {
                if cur.r_m > prev.r_m {
                    while next_rx < order.len() && order[next_rx].0 <= cur.r_m {
                        let (range, k) = order[next_rx];
                        if range >= prev.r_m {
                            let ctx = Beam {
                                medium,
                                c0,
                                cos0,
                                dtheta,
                                images: Images::new(medium, config, receivers[k]),
                                range,
                            };
                            ctx.deposit(&prev, &cur, &bands, k * nf, &mut out);
                        }
                        next_rx += 1;
                    }
                    if next_rx == order.len() {
                        break;
                    }
                }
                prev = cur;
            }
        }
    }
    add_steep_direct_paths(config, source, receivers, &bands, c0, &mut out);
    Ok(out)
}

fn add_steep_direct_paths(
    config: &PropagationConfig,
    source: (f64, f64),
    receivers: &[(f64, f64)],
    bands: &[Band],
    c0: f64,
    out: &mut FieldSum,
) {
    let lo = config.fan.angle_min_deg.to_radians();
    let hi = config.fan.angle_max_deg.to_radians();
    let nf = bands.len();
    for (k, &(x, z)) in receivers.iter().enumerate() {
        let dx = (x - source.0).abs();
        let dz = z - source.1;
        let elevation = atan2(dz, dx);
        if elevation >= lo && elevation <= hi {
            continue;
        }
        let slant = sqrt(dx * dx + dz * dz).max(1.0);
        for (i, band) in bands.iter().enumerate() {
            let power = powf(10.0, -band.alpha * slant / 10.0) / (slant * slant);
            match &mut out.pressure {
                None => out.intensity[k * nf + i] += power,
                Some(pr) => pr[k * nf + i] += Complex64::from_polar(sqrt(power), band.omega * slant / c0),
            }
        }
    }
}

struct Beam<'a, 'm> {
    medium: &'a Medium<'m>,
    c0: f64,
    cos0: f64,
    dtheta: f64,
    images: Images,
    range: f64,
}

/// The receiver and its images in the unfolded water column: cell `m` is
/// `[mD, (m+1)D]`, cell 0 is the real water. Beam tails that cross the
/// surface or seabed are picked up by the images, weighted by the
/// reflection coefficients of the boundaries crossed.
#[derive(Clone, Copy)]
struct Images {
    z: f64,
    /// Local water depth at the receiver range, if there is a seabed.
    depth: Option<f64>,
    surface: Option<f64>,
    bottom: f64,
}

/// Upper bound on image cells either side of the water.
const MAX_IMAGE_CELLS: i64 = 64;

impl Images {
    fn new(medium: &Medium<'_>, config: &PropagationConfig, rx: (f64, f64)) -> Self {
        Images {
            z: rx.1,
            depth: medium.seabed(rx.0).map(|(d, _)| d),
            surface: medium.has_surface().then_some(config.surface_reflection),
            bottom: config.bottom_reflection,
        }
    }

    /// Cells whose image can lie within `reach` metres (vertically) of a
    /// beam centred at `zc`.
    fn cells(&self, zc: f64, reach: f64) -> (i64, i64) {
        match (self.depth, self.surface) {
            (Some(d), Some(_)) => {
                let lo = floor((zc - reach) / d) as i64;
                let hi = floor((zc + reach) / d) as i64;
                (lo.max(-MAX_IMAGE_CELLS), hi.min(MAX_IMAGE_CELLS))
            }
            (Some(_), None) => (0, 1),
            (None, Some(_)) => (-1, 0),
            (None, None) => (0, 0),
        }
    }

    /// Depth and reflection weight of the image in cell `m`.
    fn image(&self, m: i64) -> (f64, f64) {
        let k = m.unsigned_abs() as i32;
        let (surfaces, bottoms) = if m >= 0 {
            (k / 2, (k + 1) / 2)
        } else {
            ((k + 1) / 2, k / 2)
        };
        let rs = self.surface.unwrap_or(0.0);
        let weight = powi(rs, surfaces) * powi(self.bottom, bottoms);
        let z = match (self.depth, m) {
            (_, 0) => self.z,
            (None, _) => -self.z,
            (Some(d), _) if m % 2 == 0 => m as f64 * d + self.z,
            (Some(d), _) => (m + 1) as f64 * d - self.z,
        };
        (z, weight)
    }
}

fn powi(x: f64, n: i32) -> f64 {
    (0..n).fold(1.0, |acc, _| acc * x)
}

impl Beam<'_, '_> {
    fn deposit(&self, a: &RayState, b: &RayState, bands: &[Band], base: usize, out: &mut FieldSum) {
        let t = (self.range - a.r_m) / (b.r_m - a.r_m);
        let lerp = |u: f64, v: f64| u + t * (v - u);
        let z = lerp(a.z_m, b.z_m);
        let rho = lerp(a.rho, b.rho);
        let zeta = lerp(a.zeta, b.zeta);
        let p = lerp(a.p, b.p);
        let (c, _) = self.medium.sound_speed(z);
        let amp = a.amplitude;

        // Generous bound on σ for picking image cells; the per-band cutoff
        // below is exact.
        let tau_hi = a.tau_s.max(b.tau_s);
        let widest = bands
            .iter()
            .map(|band| (0.2 * band.f * tau_hi).min(band.pi_lambda))
            .fold(lerp(a.q, b.q).abs() * self.dtheta, f64::max);
        let reach = 1.25 * BEAM_CUTOFF_SIGMAS * widest / (c * rho).abs().max(0.05);
        let (m_lo, m_hi) = self.images.cells(z, reach);
        for m in m_lo..=m_hi {
            let (target_z, coeff) = self.images.image(m);
            if coeff == 0.0 {
                continue;
            }
            // Step along the ray to the foot of the normal through the target.
            let dz = target_z - z;
            let ds = dz * c * zeta;
            let s = lerp(a.s_m, b.s_m) + ds;
            let tau = lerp(a.tau_s, b.tau_s) + ds / c;
            let q = lerp(a.q, b.q) + c * p * ds;

            let n = dz.abs() * (c * rho).abs();
            let width = q.abs() * self.dtheta;
            let geom = (c / self.c0) * self.cos0 / self.range;

            for (k, band) in bands.iter().enumerate() {
                let floor_width = (0.2 * band.f * tau).min(band.pi_lambda);
                let sigma = width.max(floor_width);
                let loss_db = band.alpha * s.max(0.0);
                match &mut out.pressure {
                    None => {
                        // Geometric hat (linear interpolation between neighbouring
                        // rays) unless the width floor governs, then a Gaussian.
                        let shape = if width >= floor_width {
                            if n >= width {
                                continue;
                            }
                            (1.0 - n / width) / width
                        } else {
                            if n > BEAM_CUTOFF_SIGMAS * sigma {
                                continue;
                            }
                            exp(-0.5 * (n / sigma) * (n / sigma)) / (sigma * SQRT_2PI)
                        };
                        out.intensity[base + k] +=
                            coeff * coeff * geom * amp * amp * self.dtheta * shape * powf(10.0, -loss_db / 10.0);
                    }
                    Some(pr) => {
                        if n > BEAM_CUTOFF_SIGMAS * sigma {
                            continue;
                        }
                        let g = exp(-0.5 * (n / sigma) * (n / sigma));
                        let mag = coeff * amp * sqrt(geom * q.abs()) * self.dtheta * g / (sigma * SQRT_2PI)
                            * powf(10.0, -loss_db / 20.0);
                        let curvature = if q.abs() > 1e-12 { 0.5 * (p / q) * n * n } else { 0.0 };
                        let phase = band.omega * (tau + curvature) - FRAC_PI_2 * a.caustics as f64;
                        pr[base + k] += Complex64::from_polar(1.0, phase) * mag;
                    }
                }
            }
        }
    }
}

fn power_to_tl(power: f64, cap: f64) -> f64 {
    if power > 0.0 {
        (-10.0 * log10(power)).min(cap)
    } else {
        cap
    }
}

/// Complex pressure at `receiver` relative to unit pressure at 1 m.
///
/// With incoherent summation the result is real and equals the square root
/// of the summed beam intensity.
pub fn field_at(
    medium: &Medium<'_>,
    source: (f64, f64),
    receiver: (f64, f64),
    frequency_hz: f64,
    config: &PropagationConfig,
) -> Result<Complex64> {
    if source == receiver {
        return Err(Error::invalid("receiver", "coincides with the source"));
    }
    let sum = sum_beams(medium, config, source, &[receiver], &[frequency_hz])?;
    Ok(match sum.pressure {
        Some(p) => p[0],
        None => Complex64::new(sqrt(sum.intensity[0]), 0.0),
    })
}

/// TL = −20·log10|p| in dB re 1 m, capped at `config.tl_cap_db`.
pub fn transmission_loss(
    medium: &Medium<'_>,
    source: (f64, f64),
    receiver: (f64, f64),
    frequency_hz: f64,
    config: &PropagationConfig,
) -> Result<f64> {
    if source == receiver {
        return Err(Error::invalid("receiver", "coincides with the source"));
    }
    let sum = sum_beams(medium, config, source, &[receiver], &[frequency_hz])?;
    Ok(power_to_tl(sum.power(0), config.tl_cap_db))
}

/// TL for every receiver and frequency from one trace of the fan,
/// row-major `[receiver][frequency]`.
pub fn transmission_loss_many(
    medium: &Medium<'_>,
    source: (f64, f64),
    receivers: &[(f64, f64)],
    freqs: &[f64],
    config: &PropagationConfig,
) -> Result<Vec<f64>> {
    let sum = sum_beams(medium, config, source, receivers, freqs)?;
    Ok((0..receivers.len() * freqs.len())
        .map(|k| power_to_tl(sum.power(k), config.tl_cap_db))
        .collect())
}
