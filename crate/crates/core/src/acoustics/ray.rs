use alloc::format;
use alloc::vec::Vec;

use super::{BeamFanConfig, Medium, PropagationConfig};
use crate::math::{cos, sin, sqrt};
use crate::{Error, Result};

/// Horizontal travel direction of a ray along the route axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Heading {
    Increasing,
    Decreasing,
}

impl Heading {
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Heading::Increasing => 1.0,
            Heading::Decreasing => -1.0,
        }
    }
}

/// Launch point (absolute range and depth, m) and grazing angle in degrees,
/// positive towards the seabed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Launch {
    pub range_m: f64,
    pub depth_m: f64,
    pub angle_deg: f64,
    pub heading: Heading,
}

/// One point on a ray. `r_m` is the horizontal distance travelled from the
/// source; `rho` and `zeta` are the tangent components divided by the local
/// sound speed. `p` and `q` are the dynamic-ray variables with `q` the
/// normal spread per radian of launch angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayState {
    pub r_m: f64,
    pub z_m: f64,
    pub rho: f64,
    pub zeta: f64,
    pub s_m: f64,
    pub tau_s: f64,
    pub p: f64,
    pub q: f64,
    pub surface_bounces: u32,
    pub bottom_bounces: u32,
    pub amplitude: f64,
    pub caustics: u32,
}

const AMPLITUDE_FLOOR_SQ: f64 = 1e-30;
const MIN_VERTICAL_COSINE: f64 = 1e-2;

#[derive(Clone, Copy)]
struct Y([f64; 7]);

impl Y {
    #[inline]
    fn axpy(&self, h: f64, k: &Y) -> Y {
        let mut o = self.0;
        for (a, b) in o.iter_mut().zip(k.0) {
            *a += h * b;
        }
        Y(o)
    }
}

#[derive(Clone, Copy)]
enum Event {
    Surface,
    Bottom,
    Kink(f64, f64),
}

/// Fixed-step RK4 ray integrator. Yields the launch state, then one state per
/// step. A boundary hit yields the state at the boundary followed by the
/// reflected state at the same point.
#[derive(Debug, Clone)]
pub struct RayTracer<'m> {
    medium: &'m Medium<'m>,
    x0: f64,
    dir: f64,
    step: f64,
    max_range: f64,
    max_arc: f64,
    surface_coeff: f64,
    bottom_coeff: f64,
    state: RayState,
    pending: Option<RayState>,
    started: bool,
    done: bool,
}

impl<'m> RayTracer<'m> {
    pub fn new(
        medium: &'m Medium<'m>,
        launch: Launch,
        step_m: f64,
        max_range_m: f64,
        surface_coeff: f64,
        bottom_coeff: f64,
    ) -> Result<Self> {
        if !(step_m > 0.0 && step_m.is_finite()) {
            return Err(Error::invalid("step size", format!("must be positive, got {step_m}")));
        }
        if !medium.contains(launch.range_m, launch.depth_m) {
            return Err(Error::invalid(
                "launch point",
                format!(
                    "({} m, {} m) is outside the water column",
                    launch.range_m, launch.depth_m
                ),
            ));
        }
        let (c0, _) = medium.sound_speed(launch.depth_m);
        let th = launch.angle_deg.to_radians();
        let state = RayState {
            r_m: 0.0,
            z_m: launch.depth_m,
            rho: cos(th) / c0,
            zeta: sin(th) / c0,
            s_m: 0.0,
            tau_s: 0.0,
            p: 1.0 / c0,
            q: 0.0,
            surface_bounces: 0,
            bottom_bounces: 0,
            amplitude: 1.0,
            caustics: 0,
        };
        Ok(RayTracer {
            medium,
            x0: launch.range_m,
            dir: launch.heading.sign(),
            step: step_m,
            max_range: max_range_m,
            max_arc: 3.0 * max_range_m + 1000.0,
            surface_coeff,
            bottom_coeff,
            state,
            pending: None,
            started: false,
            done: false,
        })
    }

    #[inline]
    fn deriv(&self, y: &Y) -> Y {
        let [_, z, rho, zeta, _, p, _] = y.0;
        let (c, cz) = self.medium.sound_speed_heading(z, zeta >= 0.0);
        Y([c * rho, c * zeta, 0.0, -cz / (c * c), 1.0 / c, 0.0, c * p])
    }

    fn rk4(&self, y: &Y, h: f64) -> Y {
        let k1 = self.deriv(y);
        let k2 = self.deriv(&y.axpy(0.5 * h, &k1));
        let k3 = self.deriv(&y.axpy(0.5 * h, &k2));
        let k4 = self.deriv(&y.axpy(h, &k3));
        let mut o = y.0;
        for (i, oi) in o.iter_mut().enumerate() {
            *oi += h / 6.0 * (k1.0[i] + 2.0 * k2.0[i] + 2.0 * k3.0[i] + k4.0[i]);
        }
        Y(o)
    }

    #[inline]
    fn seabed_local(&self, r: f64) -> Option<(f64, f64)> {
        self.medium
            .seabed(self.x0 + self.dir * r)
            .map(|(d, m)| (d, m * self.dir))
    }

    /// Signed distance past an interface: negative before the crossing.
    fn past(&self, e: Event, down: bool, y: &Y) -> f64 {
        let z = y.0[1];
        match e {
            Event::Surface => -z,
            Event::Bottom => z - self.seabed_local(y.0[0]).map_or(f64::INFINITY, |(d, _)| d),
            Event::Kink(zk, _) => {
                if down {
                    z - zk
                } else {
                    zk - z
                }
            }
        }
    }

    /// Earliest interface crossed between `a` and `b`, as a step fraction.
    fn first_event(&self, a: &Y, b: &Y) -> Option<(f64, Event)> {
        let (z0, z1) = (a.0[1], b.0[1]);
        let mut best: Option<(f64, Event)> = None;
        let mut consider = |frac: f64, e: Event| {
            let frac = frac.clamp(0.0, 1.0);
            if best.map_or(true, |(f, _)| frac < f) {
                best = Some((frac, e));
            }
        };
        if self.medium.has_surface() && z1 < 0.0 {
            consider(z0 / (z0 - z1), Event::Surface);
        }
        if let (Some((d0, _)), Some((d1, _))) = (self.seabed_local(a.0[0]), self.seabed_local(b.0[0])) {
            let (f0, f1) = (z0 - d0, z1 - d1);
            if f1 > 0.0 {
                consider(-f0 / (f1 - f0), Event::Bottom);
            }
        }
        for &(zk, jump) in self.medium.kinks() {
            if (z0 < zk && z1 >= zk) || (z0 > zk && z1 <= zk) {
                consider((zk - z0) / (z1 - z0), Event::Kink(zk, jump));
            }
        }
        best
    }

    /// Step length that lands on the interface, refined by regula falsi
    /// (Illinois variant) from the secant estimate.
    fn land_on(&self, y0: &Y, e: Event, frac: f64) -> (f64, Y) {
        let down = y0.0[1]
            < match e {
                Event::Kink(zk, _) => zk,
                _ => f64::INFINITY,
            };
        let (mut lo, mut hi) = (0.0, self.step);
        let (mut f_lo, mut f_hi) = (self.past(e, down, y0), self.past(e, down, &self.rk4(y0, hi)));
        let mut h = (self.step * frac).clamp(1e-9, self.step);
        let mut y = self.rk4(y0, h);
        let mut side = 0i8;
        for _ in 0..30 {
            let f = self.past(e, down, &y);
            if f.abs() < 1e-10 || !(f_hi > f_lo) {
                break;
            }
            if f > 0.0 {
                hi = h;
                f_hi = f;
                if side == 1 {
                    f_lo *= 0.5;
                }
                side = 1;
            } else {
                lo = h;
                f_lo = f;
                if side == -1 {
                    f_hi *= 0.5;
                }
                side = -1;
            }
            h = (lo - f_lo * (hi - lo) / (f_hi - f_lo)).clamp(lo, hi);
            y = self.rk4(y0, h);
        }
        (h.max(1e-9), y)
    }

    fn to_y(s: &RayState) -> Y {
        Y([s.r_m, s.z_m, s.rho, s.zeta, s.tau_s, s.p, s.q])
    }

    fn state_from_y(&self, y: &Y, h: f64) -> RayState {
        let prev = &self.state;
        let [r, z, rho, zeta, tau, p, q] = y.0;
        let mut s = RayState {
            r_m: r,
            z_m: z,
            rho,
            zeta,
            s_m: prev.s_m + h,
            tau_s: tau,
            p,
            q,
            ..*prev
        };
        if prev.q != 0.0 && prev.q.signum() != q.signum() {
            s.caustics += 1;
        }
        s
    }

    /// Restores |c·t| = 1 by adjusting `zeta` only, so the horizontal
    /// slowness (Snell invariant) is untouched. Skipped near turning points.
    fn normalize(&self, s: &mut RayState) {
        let (c, _) = self.medium.sound_speed(s.z_m);
        let zz = 1.0 / (c * c) - s.rho * s.rho;
        if zz > 1e-4 / (c * c) {
            s.zeta = sqrt(zz).copysign(s.zeta);
        }
    }

    /// Specular reflection with the beam-curvature correction for a boundary
    /// whose outward normal is `n` and tangent `t`.
    fn reflect(&self, s: &RayState, n: (f64, f64), t: (f64, f64), top: bool, coeff: f64) -> RayState {
        let (c, cz) = self.medium.sound_speed(s.z_m);
        let th = s.rho * n.0 + s.zeta * n.1;
        let tg = s.rho * t.0 + s.zeta * t.1;
        let (rho2, zeta2) = (s.rho - 2.0 * th * n.0, s.zeta - 2.0 * th * n.1);

        let ray_t = (c * s.rho, c * s.zeta);
        let ray_n = (-ray_t.1, ray_t.0);
        let ray_t2 = (c * rho2, c * zeta2);
        let ray_n2 = (ray_t2.1, -ray_t2.0);
        let mut cn_jump = -(cz * (ray_n2.1 - ray_n.1));
        let cs_jump = -(cz * (ray_t2.1 - ray_t.1));
        if top {
            cn_jump = -cn_jump;
        }
        let rm = tg / th;
        let rn = rm * (2.0 * cn_jump - rm * cs_jump) / (c * c);

        let mut out = RayState {
            rho: rho2,
            zeta: zeta2,
            p: s.p + s.q * rn,
            amplitude: s.amplitude * coeff,
            ..*s
        };
        if top {
            out.surface_bounces += 1;
        } else {
            out.bottom_bounces += 1;
        }
        out
    }

    fn advance(&mut self) -> Option<RayState> {
        let y0 = Self::to_y(&self.state);
        let y1 = self.rk4(&y0, self.step);
        let Some((frac, event)) = self.first_event(&y0, &y1) else {
            let mut s = self.state_from_y(&y1, self.step);
            self.normalize(&mut s);
            return Some(s);
        };
        let (h, y) = self.land_on(&y0, event, frac);
        let mut s = self.state_from_y(&y, h);
        match event {
            Event::Surface => {
                s.z_m = 0.0;
                self.normalize(&mut s);
                let refl = self.reflect(&s, (0.0, -1.0), (1.0, 0.0), true, self.surface_coeff);
                self.pending = Some(refl);
            }
            Event::Bottom => {
                let (d, m) = self.seabed_local(s.r_m).expect("bottom event implies a seabed");
                s.z_m = d;
                self.normalize(&mut s);
                let norm = sqrt(1.0 + m * m);
                let n = (-m / norm, 1.0 / norm);
                let t = (1.0 / norm, m / norm);
                let refl = self.reflect(&s, n, t, false, self.bottom_coeff);
                self.pending = Some(refl);
            }
            Event::Kink(zk, jump) => {
                s.z_m = zk;
                self.normalize(&mut s);
                let (c, _) = self.medium.sound_speed(zk);
                let tr = c * s.rho;
                let tz = (c * s.zeta).abs().max(MIN_VERTICAL_COSINE);
                s.p -= jump * tr * tr * s.q / (c * c * tz);
            }
        }
        Some(s)
    }
}

impl Iterator for RayTracer<'_> {
    type Item = RayState;

    fn next(&mut self) -> Option<RayState> {
        if !self.started {
            self.started = true;
            return Some(self.state);
        }
        if let Some(p) = self.pending.take() {
            self.state = p;
            return Some(p);
        }
        if self.done {
            return None;
        }
        let s = &self.state;
        if s.r_m >= self.max_range || s.s_m >= self.max_arc || s.amplitude * s.amplitude < AMPLITUDE_FLOOR_SQ {
            self.done = true;
            return None;
        }
        let next = self.advance()?;
        let stalled = next.r_m == self.state.r_m && self.pending.is_none();
        if stalled || !(next.r_m >= self.state.r_m) {
            self.done = true;
            self.pending = None;
            return None;
        }
        self.state = next;
        Some(next)
    }
}

/// Traces a single ray and collects its path.
pub fn trace_ray(medium: &Medium<'_>, launch: Launch, config: &PropagationConfig) -> Result<Vec<RayState>> {
    let fan: &BeamFanConfig = &config.fan;
    fan.validate()?;
    let max_range = fan.max_range_m.unwrap_or(100_000.0);
    let tracer = RayTracer::new(
        medium,
        launch,
        fan.step_m,
        max_range,
        config.surface_reflection,
        config.bottom_reflection,
    )?;
    Ok(tracer.collect())
}
