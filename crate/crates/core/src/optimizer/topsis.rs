use alloc::format;
use alloc::vec::Vec;

use crate::math::sqrt;
use crate::{Error, Result};

/// Closeness values closer than this are treated as ties, broken by index.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Which objective values feed the decision matrix.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TopsisBasis {
    /// Raw (J1, J2) of the front members.
    #[default]
    Raw,
    /// Ideal/nadir-normalized objectives.
    Normalized,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopsisRanking {
    /// Relative closeness C per input row.
    pub closeness: Vec<f64>,
    /// Row indices, best first.
    pub order: Vec<usize>,
    /// `order[0]`.
    pub best: usize,
}

/// TOPSIS with equal weights on two minimized criteria.
pub fn topsis_rank(points: &[[f64; 2]]) -> Result<TopsisRanking> {
    topsis_rank_weighted(points, [0.5, 0.5])
}

/// TOPSIS with vector normalization and the given weights.
///
/// A single row, or rows that all coincide, get C = 1.
pub fn topsis_rank_weighted(points: &[[f64; 2]], weights: [f64; 2]) -> Result<TopsisRanking> {
    if points.is_empty() {
        return Err(Error::invalid("topsis", "empty decision matrix"));
    }
    if !(weights.iter().all(|w| w.is_finite() && *w >= 0.0)) {
        return Err(Error::invalid("topsis", "weights must be finite and nonnegative"));
    }
    if points.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::invalid("topsis", "decision matrix has a non-finite entry"));
    }
    let mut scale = [0.0; 2];
    for k in 0..2 {
        let norm = sqrt(points.iter().map(|p| p[k] * p[k]).sum());
        if norm == 0.0 {
            return Err(Error::invalid("topsis", format!("column {} has zero norm", k + 1)));
        }
        scale[k] = weights[k] / norm;
    }
    let v: Vec<[f64; 2]> = points.iter().map(|p| [p[0] * scale[0], p[1] * scale[1]]).collect();
    let mut pis = [f64::INFINITY; 2];
    let mut nis = [f64::NEG_INFINITY; 2];
    for p in &v {
        for k in 0..2 {
            pis[k] = pis[k].min(p[k]);
            nis[k] = nis[k].max(p[k]);
        }
    }
    let dist = |a: &[f64; 2], b: &[f64; 2]| sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]));
    let closeness: Vec<f64> = v
        .iter()
        .map(|p| {
            let (s_plus, s_minus) = (dist(p, &pis), dist(p, &nis));
            if s_plus + s_minus == 0.0 {
                1.0
            } else {
                s_minus / (s_plus + s_minus)
            }
        })
        .collect();
    let order = rank_by_closeness(&closeness);
    Ok(TopsisRanking {
        best: order[0],
        closeness,
        order,
    })
}

/// Descending closeness, ties within [`TIE_TOLERANCE`] by lower index.
fn rank_by_closeness(c: &[f64]) -> Vec<usize> {
    // Selection rather than a comparator sort: tolerance ties are not transitive.
    let mut left: Vec<usize> = (0..c.len()).collect();
    let mut order = Vec::with_capacity(c.len());
    while !left.is_empty() {
        let mut best = 0;
        for k in 1..left.len() {
            if c[left[k]] > c[left[best]] + TIE_TOLERANCE {
                best = k;
            }
        }
        order.push(left.remove(best));
    }
    order
}
