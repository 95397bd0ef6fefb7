//! Selection and variation. Each operator has a pure form taking its uniform
//! draws explicitly and an `Rng` form that consumes them from a stream.

use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::Rng;

use crate::math::powf;

/// Largest usable draw; keeps the upper SBX branch finite.
const U_MAX: f64 = 1.0 - f64::EPSILON;

/// SBX spread factor β for a uniform draw `u`.
pub fn sbx_beta(u: f64, eta: f64) -> f64 {
    let u = u.clamp(0.0, U_MAX);
    let e = 1.0 / (eta + 1.0);
    if u <= 0.5 {
        powf(2.0 * u, e)
    } else {
        powf(1.0 / (2.0 * (1.0 - u)), e)
    }
}

/// SBX on one gene pair, children clipped to `[lo, hi]`.
pub fn sbx_gene(a: f64, b: f64, u: f64, eta: f64, lo: f64, hi: f64) -> (f64, f64) {
    let beta = sbx_beta(u, eta);
    let c1 = 0.5 * ((1.0 + beta) * a + (1.0 - beta) * b);
    let c2 = 0.5 * ((1.0 - beta) * a + (1.0 + beta) * b);
    (c1.clamp(lo, hi), c2.clamp(lo, hi))
}

/// Crosses every gene of two equal-length plans using one draw per gene.
pub fn sbx_with_draws(a: &[f64], b: &[f64], draws: &[f64], eta: f64, lo: f64, hi: f64) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.len(), b.len(), "parents differ in length");
    assert_eq!(a.len(), draws.len(), "one draw per gene");
    a.iter()
        .zip(b)
        .zip(draws)
        .map(|((&x, &y), &u)| sbx_gene(x, y, u, eta, lo, hi))
        .unzip()
}

/// With probability `pc` the parents are crossed gene by gene, otherwise
/// copied.
pub fn sbx_crossover<R: Rng + ?Sized>(
    a: &[f64],
    b: &[f64],
    eta: f64,
    pc: f64,
    lo: f64,
    hi: f64,
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    if rng.random::<f64>() >= pc {
        return (a.to_vec(), b.to_vec());
    }
    let draws: Vec<f64> = (0..a.len()).map(|_| rng.random::<f64>()).collect();
    sbx_with_draws(a, b, &draws, eta, lo, hi)
}

/// Polynomial mutation step δ ∈ [−1, 1] for a uniform draw `u`.
pub fn mutation_delta(u: f64, eta: f64) -> f64 {
    let u = u.clamp(0.0, U_MAX);
    let e = 1.0 / (eta + 1.0);
    if u < 0.5 {
        powf(2.0 * u, e) - 1.0
    } else {
        1.0 - powf(2.0 * (1.0 - u), e)
    }
}

/// Mutates one gene: x + δ·(hi − lo), clipped.
pub fn mutate_gene(x: f64, u: f64, eta: f64, lo: f64, hi: f64) -> f64 {
    (x + mutation_delta(u, eta) * (hi - lo)).clamp(lo, hi)
}

/// Each gene mutates with probability `pm`. Draw order per gene: the
/// Bernoulli draw, then the δ draw if it fired.
pub fn polynomial_mutation<R: Rng + ?Sized>(plan: &mut [f64], eta: f64, pm: f64, lo: f64, hi: f64, rng: &mut R) {
    for x in plan.iter_mut() {
        if rng.random::<f64>() < pm {
            *x = mutate_gene(*x, rng.random::<f64>(), eta, lo, hi);
        }
    }
}

/// Binary tournament on `(rank, crowding)` between two given contestants.
/// Lower rank wins, then larger crowding, then lower index.
pub fn tournament_winner(i: usize, j: usize, rank: &[usize], crowding: &[f64]) -> usize {
    let ord = rank[i]
        .cmp(&rank[j])
        .then_with(|| crowding[j].partial_cmp(&crowding[i]).unwrap_or(Ordering::Equal))
        .then(i.cmp(&j));
    if ord == Ordering::Greater {
        j
    } else {
        i
    }
}

/// Draws two contestants uniformly (with replacement) and returns the winner.
pub fn tournament_select<R: Rng + ?Sized>(rank: &[usize], crowding: &[f64], rng: &mut R) -> usize {
    assert!(!rank.is_empty(), "tournament on an empty population");
    let i = rng.random_range(0..rank.len());
    let j = rng.random_range(0..rank.len());
    tournament_winner(i, j, rank, crowding)
}
