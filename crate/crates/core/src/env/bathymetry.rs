use alloc::format;
use alloc::vec::Vec;

use crate::math::{interp_linear, segment_index, strictly_increasing};
use crate::units::METRES_PER_NM;
use crate::{Error, Result};

/// Seabed depth sampled along the route (range in NM, depth in m, positive
/// down), linearly interpolated between samples.
#[derive(Debug, Clone, PartialEq)]
pub struct BathymetryProfile {
    ranges_nm: Vec<f64>,
    depths_m: Vec<f64>,
}

impl BathymetryProfile {
    pub fn new(samples: &[(f64, f64)]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::invalid(
                "bathymetry",
                "at least two (range, depth) samples are required",
            ));
        }
        let ranges_nm: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let depths_m: Vec<f64> = samples.iter().map(|s| s.1).collect();
        if ranges_nm.iter().any(|r| !r.is_finite()) || !strictly_increasing(&ranges_nm) {
            return Err(Error::invalid(
                "bathymetry",
                "ranges must be finite and strictly increasing",
            ));
        }
        if let Some((r, d)) = samples.iter().find(|(_, d)| !(d.is_finite() && *d > 0.0)) {
            return Err(Error::invalid(
                "bathymetry",
                format!("depth at {r} NM must be positive, got {d} m"),
            ));
        }
        Ok(BathymetryProfile { ranges_nm, depths_m })
    }

    /// Constant depth over `[0, length_nm]`.
    pub fn flat(depth_m: f64, length_nm: f64) -> Result<Self> {
        Self::new(&[(0.0, depth_m), (length_nm, depth_m)])
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.ranges_nm.iter().copied().zip(self.depths_m.iter().copied())
    }

    pub fn coverage_nm(&self) -> (f64, f64) {
        (self.ranges_nm[0], self.ranges_nm[self.ranges_nm.len() - 1])
    }

    pub fn covers(&self, lo_nm: f64, hi_nm: f64) -> bool {
        let (a, b) = self.coverage_nm();
        a <= lo_nm && hi_nm <= b
    }

    pub fn max_depth_m(&self) -> f64 {
        self.depths_m.iter().copied().fold(0.0, f64::max)
    }

    pub fn depth_at(&self, range_nm: f64) -> Result<f64> {
        let (lo, hi) = self.coverage_nm();
        if !(range_nm >= lo && range_nm <= hi) {
            return Err(Error::OutOfCoverage {
                what: "range (NM)",
                value: range_nm,
                lo,
                hi,
            });
        }
        Ok(interp_linear(&self.ranges_nm, &self.depths_m, range_nm))
    }

    /// Depth and slope `d(depth)/d(range)` at a range in metres. Outside the
    /// sampled coverage the seabed is continued flat.
    pub(crate) fn depth_and_slope_m(&self, range_m: f64) -> (f64, f64) {
        let r = range_m / METRES_PER_NM;
        let (lo, hi) = self.coverage_nm();
        if r <= lo {
            return (self.depths_m[0], 0.0);
        }
        if r >= hi {
            return (self.depths_m[self.depths_m.len() - 1], 0.0);
        }
        let i = segment_index(&self.ranges_nm, r);
        let (r0, r1) = (self.ranges_nm[i], self.ranges_nm[i + 1]);
        let (d0, d1) = (self.depths_m[i], self.depths_m[i + 1]);
        let slope_per_nm = (d1 - d0) / (r1 - r0);
        (d0 + (r - r0) * slope_per_nm, slope_per_nm / METRES_PER_NM)
    }
}

/// Seabed depth (m) at `range_nm`; fails outside the sampled coverage.
pub fn depth_at(bathymetry: &BathymetryProfile, range_nm: f64) -> Result<f64> {
    bathymetry.depth_at(range_nm)
}
