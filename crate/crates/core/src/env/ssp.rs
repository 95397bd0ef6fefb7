use alloc::format;
use alloc::vec::Vec;

use crate::math::{segment_index, strictly_increasing};
use crate::{Error, Result};

/// Range-independent sound speed versus depth, piecewise linear.
///
/// Below the deepest sample the last segment's gradient is continued. A
/// single-sample profile is isovelocity.
#[derive(Debug, Clone, PartialEq)]
pub struct SoundSpeedProfile {
    depths_m: Vec<f64>,
    speeds_ms: Vec<f64>,
}

impl SoundSpeedProfile {
    pub fn new(samples: &[(f64, f64)]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::invalid("sound speed profile", "no samples"));
        }
        let depths_m: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let speeds_ms: Vec<f64> = samples.iter().map(|s| s.1).collect();
        if depths_m[0] != 0.0 {
            return Err(Error::invalid(
                "sound speed profile",
                format!("first depth must be 0 m, got {}", depths_m[0]),
            ));
        }
        if !strictly_increasing(&depths_m) || depths_m.iter().any(|d| !d.is_finite()) {
            return Err(Error::invalid(
                "sound speed profile",
                "depths must be finite and strictly increasing",
            ));
        }
        if let Some((d, c)) = samples.iter().find(|(_, c)| !(*c >= 1400.0 && *c <= 1600.0)) {
            return Err(Error::invalid(
                "sound speed profile",
                format!("speed at {d} m must lie in [1400, 1600] m/s, got {c}"),
            ));
        }
        Ok(SoundSpeedProfile { depths_m, speeds_ms })
    }

    pub fn isovelocity(speed_ms: f64) -> Result<Self> {
        Self::new(&[(0.0, speed_ms)])
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.depths_m.iter().copied().zip(self.speeds_ms.iter().copied())
    }

    pub fn sound_speed_at(&self, depth_m: f64) -> Result<f64> {
        if !(depth_m >= 0.0) {
            return Err(Error::invalid(
                "depth",
                format!("sound speed requested at negative depth {depth_m} m"),
            ));
        }
        Ok(self.eval(depth_m).0)
    }

    /// Speed and vertical gradient at any depth. Above the surface the first
    /// segment is extrapolated (used only for unbounded test media).
    #[inline]
    pub(crate) fn eval(&self, z: f64) -> (f64, f64) {
        if self.depths_m.len() == 1 {
            return (self.speeds_ms[0], 0.0);
        }
        let i = segment_index(&self.depths_m, z);
        let g = (self.speeds_ms[i + 1] - self.speeds_ms[i]) / (self.depths_m[i + 1] - self.depths_m[i]);
        (self.speeds_ms[i] + g * (z - self.depths_m[i]), g)
    }

    /// As [`Self::eval`], but a depth exactly on a sample takes the gradient
    /// of the segment the ray is heading into.
    #[inline]
    pub(crate) fn eval_heading(&self, z: f64, downward: bool) -> (f64, f64) {
        if downward || self.depths_m.len() == 1 {
            return self.eval(z);
        }
        let upper = self.depths_m.partition_point(|&v| v < z);
        let i = upper.clamp(1, self.depths_m.len() - 1) - 1;
        let g = (self.speeds_ms[i + 1] - self.speeds_ms[i]) / (self.depths_m[i + 1] - self.depths_m[i]);
        (self.speeds_ms[i] + g * (z - self.depths_m[i]), g)
    }

    /// Interior sample depths with the gradient jump `g_below - g_above` there.
    pub(crate) fn gradient_kinks(&self) -> Vec<(f64, f64)> {
        let n = self.depths_m.len();
        if n < 3 {
            return Vec::new();
        }
        let grad = |i: usize| (self.speeds_ms[i + 1] - self.speeds_ms[i]) / (self.depths_m[i + 1] - self.depths_m[i]);
        (1..n - 1)
            .map(|k| (self.depths_m[k], grad(k) - grad(k - 1)))
            .filter(|(_, jump)| *jump != 0.0)
            .collect()
    }
}

/// Sound speed (m/s) at `depth_m`; fails for negative depths.
pub fn sound_speed_at(ssp: &SoundSpeedProfile, depth_m: f64) -> Result<f64> {
    ssp.sound_speed_at(depth_m)
}
