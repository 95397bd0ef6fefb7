//! Source spectrum, audiogram thresholds and the noise objective J1.

mod audiogram;
mod objective;

pub use audiogram::{audiogram_threshold, Audiogram, AudiogramTable};
pub use objective::{noise_objective, peak_received_spl, received_spl_by_leg, NoiseModel, NoiseObjectiveBreakdown};

use alloc::format;
use alloc::vec::Vec;

use crate::math::{db_to_power, log10};
use crate::{Error, Result};

/// Reference intensity of the objective, W/m².
pub const I0_W_M2: f64 = 0.67e-18;

/// Ross near-field source level, dB re 1 µPa at 1 m.
pub fn source_level(speed_kt: f64, displacement_mt: f64, frequency_hz: f64) -> Result<f64> {
    for (what, v) in [
        ("speed", speed_kt),
        ("displacement", displacement_mt),
        ("frequency", frequency_hz),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::invalid(what, format!("must be positive, got {v}")));
        }
    }
    Ok(source_level_unchecked(speed_kt, displacement_mt, frequency_hz))
}

#[inline]
pub(crate) fn source_level_unchecked(speed_kt: f64, displacement_mt: f64, frequency_hz: f64) -> f64 {
    112.0 + 50.0 * log10(speed_kt / 10.0) + 15.0 * log10(displacement_mt) + 20.0 - 20.0 * log10(frequency_hz)
}

/// Source levels over a frequency grid at one speed.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceSpectrum {
    pub speed_kt: f64,
    pub displacement_mt: f64,
    pub levels: Vec<(f64, f64)>,
}

impl SourceSpectrum {
    pub fn new(speed_kt: f64, displacement_mt: f64, frequencies_hz: &[f64]) -> Result<Self> {
        let levels = frequencies_hz
            .iter()
            .map(|&f| source_level(speed_kt, displacement_mt, f).map(|l| (f, l)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SourceSpectrum {
            speed_kt,
            displacement_mt,
            levels,
        })
    }
}

/// Sonar equation: NL = NLS − TL.
#[inline]
pub fn received_level(nls_db: f64, tl_db: f64) -> f64 {
    nls_db - tl_db
}

/// I = I0·10^(SPL/10).
#[inline]
pub fn spl_to_intensity(spl_db: f64) -> f64 {
    I0_W_M2 * db_to_power(spl_db)
}

/// 10·log10(I/I0).
#[inline]
pub fn intensity_to_db(intensity_w_m2: f64) -> f64 {
    10.0 * log10(intensity_w_m2 / I0_W_M2)
}
