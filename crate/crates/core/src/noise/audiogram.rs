use alloc::format;
use alloc::vec::Vec;

use crate::env::HearingGroup;
use crate::math::{log10, powf};
use crate::{Error, Result};

/// Four-parameter audiogram fit
/// α(f) = α0 + P1·log10(1 + P2/f) + (f/P3)^P4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Audiogram {
    pub group: HearingGroup,
    pub alpha0_db: f64,
    pub p1_db: f64,
    pub p2_hz: f64,
    pub p3_hz: f64,
    pub p4: f64,
}

impl Audiogram {
    pub fn validate(&self) -> Result<()> {
        let all = [self.alpha0_db, self.p1_db, self.p2_hz, self.p3_hz, self.p4];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid(
                "audiogram",
                format!("non-finite parameter for group {}", self.group),
            ));
        }
        if !(self.p2_hz >= 0.0 && self.p3_hz > 0.0) {
            return Err(Error::invalid(
                "audiogram",
                format!("group {}: need p2 >= 0 and p3 > 0", self.group),
            ));
        }
        Ok(())
    }

    /// Threshold in dB. `f` must be positive.
    #[inline]
    pub fn threshold(&self, f: f64) -> f64 {
        self.alpha0_db + self.p1_db * log10(1.0 + self.p2_hz / f) + powf(f / self.p3_hz, self.p4)
    }
}

pub fn audiogram_threshold(audiogram: &Audiogram, frequency_hz: f64) -> Result<f64> {
    if !(frequency_hz > 0.0) {
        return Err(Error::invalid(
            "frequency",
            format!("must be positive, got {frequency_hz}"),
        ));
    }
    Ok(audiogram.threshold(frequency_hz))
}

/// At most one audiogram per hearing group.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AudiogramTable {
    entries: [Option<Audiogram>; 5],
}

impl AudiogramTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts or replaces the entry for the audiogram's group.
    pub fn insert(&mut self, a: Audiogram) -> Result<()> {
        a.validate()?;
        self.entries[a.group.index()] = Some(a);
        Ok(())
    }

    pub fn get(&self, group: HearingGroup) -> Option<&Audiogram> {
        self.entries[group.index()].as_ref()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Audiogram> {
        self.entries.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn from_entries(entries: impl IntoIterator<Item = Audiogram>) -> Result<Self> {
        let mut t = Self::new();
        let v: Vec<Audiogram> = entries.into_iter().collect();
        for (k, a) in v.iter().enumerate() {
            if v[..k].iter().any(|o| o.group == a.group) {
                return Err(Error::invalid(
                    "audiograms",
                    format!("duplicate entry for group {}", a.group),
                ));
            }
            t.insert(*a)?;
        }
        Ok(t)
    }
}
