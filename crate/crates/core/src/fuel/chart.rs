use alloc::format;
use alloc::vec::Vec;

use crate::env::ShipCharacteristics;
use crate::math::{segment_index, sqrt, strictly_increasing};
use crate::units::{ms_to_knots, METRES_PER_FOOT};
use crate::{Error, Result};

/// Residual-resistance coefficient chart on a rectangular grid of
/// speed-length ratio (kt/√ft) by prismatic coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualChart {
    sl: Vec<f64>,
    cp: Vec<f64>,
    /// Row-major `[sl][cp]`.
    cr: Vec<f64>,
}

impl ResidualChart {
    /// Builds the chart from `(speed_length_ratio, prismatic_coeff, c_r)`
    /// rows in any order. Every grid node must appear exactly once.
    pub fn from_rows(rows: &[(f64, f64, f64)]) -> Result<Self> {
        let mut sl: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let mut cp: Vec<f64> = rows.iter().map(|r| r.1).collect();
        for axis in [&mut sl, &mut cp] {
            if axis.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid("residual chart", "non-finite axis value"));
            }
            axis.sort_by(f64::total_cmp);
            axis.dedup();
        }
        if sl.len() < 2 || cp.len() < 2 {
            return Err(Error::invalid(
                "residual chart",
                "need at least two distinct values on each axis",
            ));
        }
        if rows.len() != sl.len() * cp.len() {
            return Err(Error::invalid(
                "residual chart",
                format!(
                    "expected a full {} x {} grid, got {} rows",
                    sl.len(),
                    cp.len(),
                    rows.len()
                ),
            ));
        }
        let mut cr = alloc::vec![f64::NAN; rows.len()];
        for &(s, p, c) in rows {
            if !(c.is_finite() && c >= 0.0) {
                return Err(Error::invalid(
                    "residual chart",
                    format!("c_r must be finite and >= 0, got {c} at ({s}, {p})"),
                ));
            }
            let i = sl.partition_point(|&v| v < s);
            let j = cp.partition_point(|&v| v < p);
            let slot = &mut cr[i * cp.len() + j];
            if !slot.is_nan() {
                return Err(Error::invalid("residual chart", format!("duplicate node ({s}, {p})")));
            }
            *slot = c;
        }
        debug_assert!(strictly_increasing(&sl) && strictly_increasing(&cp));
        Ok(ResidualChart { sl, cp, cr })
    }

    pub fn speed_length_axis(&self) -> &[f64] {
        &self.sl
    }

    pub fn prismatic_axis(&self) -> &[f64] {
        &self.cp
    }

    pub fn node(&self, i: usize, j: usize) -> f64 {
        self.cr[i * self.cp.len() + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (0..self.sl.len()).flat_map(move |i| (0..self.cp.len()).map(move |j| (self.sl[i], self.cp[j], self.node(i, j))))
    }

    /// Whether C_r is nondecreasing in speed-length ratio on every column.
    pub fn monotone_in_speed(&self) -> bool {
        (0..self.cp.len()).all(|j| (1..self.sl.len()).all(|i| self.node(i, j) >= self.node(i - 1, j)))
    }

    /// Bilinear interpolation; fails outside the chart.
    pub fn at(&self, speed_length_ratio: f64, prismatic: f64) -> Result<f64> {
        let (s0, s1) = (self.sl[0], self.sl[self.sl.len() - 1]);
        if !(speed_length_ratio >= s0 && speed_length_ratio <= s1) {
            return Err(Error::OutOfCoverage {
                what: "speed-length ratio",
                value: speed_length_ratio,
                lo: s0,
                hi: s1,
            });
        }
        let (p0, p1) = (self.cp[0], self.cp[self.cp.len() - 1]);
        if !(prismatic >= p0 && prismatic <= p1) {
            return Err(Error::OutOfCoverage {
                what: "prismatic coefficient",
                value: prismatic,
                lo: p0,
                hi: p1,
            });
        }
        let i = segment_index(&self.sl, speed_length_ratio);
        let j = segment_index(&self.cp, prismatic);
        let tx = (speed_length_ratio - self.sl[i]) / (self.sl[i + 1] - self.sl[i]);
        let ty = (prismatic - self.cp[j]) / (self.cp[j + 1] - self.cp[j]);
        let a = self.node(i, j) + ty * (self.node(i, j + 1) - self.node(i, j));
        let b = self.node(i + 1, j) + ty * (self.node(i + 1, j + 1) - self.node(i + 1, j));
        Ok(a + tx * (b - a))
    }

    /// Checks the ship's prismatic coefficient and the speed band fall inside the chart.
    pub fn check_coverage(&self, ship: &ShipCharacteristics, v_min_kt: f64, v_max_kt: f64) -> Result<()> {
        let sl = |v: f64| v / sqrt(ship.length_pp_m / METRES_PER_FOOT);
        self.at(sl(v_min_kt), ship.prismatic_coeff())?;
        self.at(sl(v_max_kt), ship.prismatic_coeff())?;
        Ok(())
    }
}

/// C_r from the chart at the ship's speed-length ratio and prismatic coefficient.
pub fn residual_coefficient(speed_ms: f64, ship: &ShipCharacteristics, chart: &ResidualChart) -> Result<f64> {
    let l_ft = ship.length_pp_m / METRES_PER_FOOT;
    chart.at(ms_to_knots(speed_ms) / sqrt(l_ft), ship.prismatic_coeff())
}
