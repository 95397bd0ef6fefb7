use alloc::format;
use alloc::vec::Vec;

use super::sort::pareto_dominates;
use crate::{Error, Result};

/// Area dominated by `points` inside the box bounded by `reference`
/// (minimization). Dominated and duplicate points contribute nothing.
pub fn hypervolume(points: &[[f64; 2]], reference: [f64; 2]) -> Result<f64> {
    if let Some(p) = points.iter().find(|p| !(p[0] <= reference[0] && p[1] <= reference[1])) {
        return Err(Error::invalid(
            "hypervolume",
            format!(
                "point ({}, {}) lies outside the reference box ({}, {})",
                p[0], p[1], reference[0], reference[1]
            ),
        ));
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    let mut ceiling = reference[1];
    for p in sorted {
        if p[1] < ceiling {
            area += (reference[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    Ok(area)
}

/// Mutually nondominated set of every feasible point seen so far.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParetoArchive {
    points: Vec<[f64; 2]>,
}

impl ParetoArchive {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `p` unless an archived point dominates or equals it. Returns
    /// whether the archive changed.
    pub fn insert(&mut self, p: [f64; 2]) -> bool {
        if !(p[0].is_finite() && p[1].is_finite()) {
            return false;
        }
        if self.points.iter().any(|q| *q == p || pareto_dominates(q, &p)) {
            return false;
        }
        self.points.retain(|q| !pareto_dominates(&p, q));
        self.points.push(p);
        true
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    /// Hypervolume of the archived points inside the reference box.
    pub fn hypervolume(&self, reference: [f64; 2]) -> f64 {
        let inside: Vec<[f64; 2]> = self
            .points
            .iter()
            .copied()
            .filter(|p| p[0] <= reference[0] && p[1] <= reference[1])
            .collect();
        hypervolume(&inside, reference).unwrap_or(0.0)
    }
}
