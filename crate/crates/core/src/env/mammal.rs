use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::BathymetryProfile;
use crate::{Error, Result};

/// Marine mammal hearing groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HearingGroup {
    /// High-frequency cetaceans.
    HF,
    /// Very-high-frequency cetaceans.
    VHF,
    /// Sirenians.
    SI,
    /// Phocid carnivores in water.
    PCW,
    /// Other marine carnivores in water.
    OCW,
}

impl HearingGroup {
    pub const ALL: [HearingGroup; 5] = [
        HearingGroup::HF,
        HearingGroup::VHF,
        HearingGroup::SI,
        HearingGroup::PCW,
        HearingGroup::OCW,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            HearingGroup::HF => "HF",
            HearingGroup::VHF => "VHF",
            HearingGroup::SI => "SI",
            HearingGroup::PCW => "PCW",
            HearingGroup::OCW => "OCW",
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for HearingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HearingGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HearingGroup::ALL
            .into_iter()
            .find(|g| g.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::invalid("hearing group", format!("unknown group {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mammal {
    pub id: usize,
    pub range_nm: f64,
    pub depth_m: f64,
    pub group: HearingGroup,
}

impl Mammal {
    /// Checks the mammal lies on the route and strictly inside the water column.
    pub fn validate(&self, total_distance_nm: f64, bathymetry: &BathymetryProfile) -> Result<()> {
        if !(self.range_nm >= 0.0 && self.range_nm <= total_distance_nm) {
            return Err(Error::invalid(
                "mammal",
                format!(
                    "mammal {} at {} NM lies outside the route [0, {total_distance_nm}]",
                    self.id, self.range_nm
                ),
            ));
        }
        let seabed = bathymetry.depth_at(self.range_nm)?;
        if !(self.depth_m > 0.0 && self.depth_m < seabed) {
            return Err(Error::invalid(
                "mammal",
                format!(
                    "mammal {} depth {} m is outside the water column (seabed {seabed} m)",
                    self.id, self.depth_m
                ),
            ));
        }
        Ok(())
    }
}

/// Parameters for a randomly scattered, seeded mammal layout.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterSpec {
    pub count: usize,
    pub range_nm: (f64, f64),
    /// Depth drawn as this fraction of the local water depth.
    pub depth_fraction: (f64, f64),
    /// Optional hard ceiling on mammal depth.
    pub max_depth_m: Option<f64>,
    /// Groups drawn uniformly; empty means all five.
    pub groups: Vec<HearingGroup>,
}

impl ScatterSpec {
    pub fn new(count: usize, range_nm: (f64, f64)) -> Self {
        ScatterSpec {
            count,
            range_nm,
            depth_fraction: (0.1, 0.9),
            max_depth_m: None,
            groups: Vec::new(),
        }
    }
}

/// Draws a reproducible mammal layout. The same seed always yields the
/// same positions and groups.
pub fn scatter_mammals(spec: &ScatterSpec, bathymetry: &BathymetryProfile, seed: u64) -> Result<Vec<Mammal>> {
    let (r0, r1) = spec.range_nm;
    let (f0, f1) = spec.depth_fraction;
    if !(r0 <= r1 && bathymetry.covers(r0, r1)) {
        return Err(Error::invalid(
            "mammal scatter",
            format!("range interval [{r0}, {r1}] NM is not covered by the bathymetry"),
        ));
    }
    if !(0.0 < f0 && f0 <= f1 && f1 < 1.0) {
        return Err(Error::invalid(
            "mammal scatter",
            "depth fractions must satisfy 0 < lo <= hi < 1",
        ));
    }
    let groups: &[HearingGroup] = if spec.groups.is_empty() {
        &HearingGroup::ALL
    } else {
        &spec.groups
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(spec.count);
    for id in 0..spec.count {
        let range_nm = r0 + (r1 - r0) * rng.random::<f64>();
        let seabed = bathymetry.depth_at(range_nm)?;
        let mut depth_m = seabed * (f0 + (f1 - f0) * rng.random::<f64>());
        if let Some(cap) = spec.max_depth_m {
            depth_m = depth_m.min(cap);
        }
        let group = groups[rng.random_range(0..groups.len())];
        out.push(Mammal {
            id,
            range_nm,
            depth_m,
            group,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_round_trip() {
        for g in HearingGroup::ALL {
            assert_eq!(g.as_str().parse::<HearingGroup>().unwrap(), g);
        }
        assert_eq!("pcw".parse::<HearingGroup>().unwrap(), HearingGroup::PCW);
        assert!("XX".parse::<HearingGroup>().is_err());
    }

    #[test]
    fn below_seabed_rejected() {
        let b = BathymetryProfile::flat(200.0, 200.0).unwrap();
        let m = Mammal {
            id: 0,
            range_nm: 100.0,
            depth_m: 500.0,
            group: HearingGroup::PCW,
        };
        assert!(m.validate(200.0, &b).is_err());
        let ok = Mammal { depth_m: 30.0, ..m };
        assert!(ok.validate(200.0, &b).is_ok());
    }

    #[test]
    fn scatter_is_reproducible() {
        let b = BathymetryProfile::new(&[(0.0, 50.0), (60.0, 120.0), (110.09, 80.0)]).unwrap();
        let spec = ScatterSpec::new(25, (0.0, 110.09));
        let a = scatter_mammals(&spec, &b, 7).unwrap();
        let c = scatter_mammals(&spec, &b, 7).unwrap();
        assert_eq!(a.len(), 25);
        assert!(a
            .iter()
            .zip(&c)
            .all(|(x, y)| x.range_nm.to_bits() == y.range_nm.to_bits()
                && x.depth_m.to_bits() == y.depth_m.to_bits()
                && x.group == y.group));
        for m in &a {
            m.validate(110.09, &b).unwrap();
        }
        let d = scatter_mammals(&spec, &b, 8).unwrap();
        assert_ne!(a, d);
    }
}
