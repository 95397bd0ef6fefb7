use alloc::vec;
use alloc::vec::Vec;

use crate::math::powf;

/// Log-spaced grid from `f_lo` to `f_hi` (inclusive) with `per_decade`
/// points per factor of ten. Endpoints are exact.
pub fn log_frequency_grid(f_lo: f64, f_hi: f64, per_decade: usize) -> Vec<f64> {
    let decades = crate::math::log10(f_hi / f_lo);
    let steps = libm::round(decades * per_decade as f64).max(1.0) as usize;
    let mut out: Vec<f64> = (0..=steps)
        .map(|k| f_lo * powf(10.0, decades * k as f64 / steps as f64))
        .collect();
    out[steps] = f_hi;
    out
}

/// 31 points, ten per decade, over [10, 10^4] Hz.
pub fn default_frequency_grid() -> Vec<f64> {
    log_frequency_grid(10.0, 1.0e4, 10)
}

/// Trapezoidal quadrature weights `df` for a sampled band. A single
/// frequency gets weight 1 so the sum reduces to the bare spectral term.
pub fn trapezoid_weights(freqs: &[f64]) -> Vec<f64> {
    match freqs.len() {
        0 => Vec::new(),
        1 => vec![1.0],
        n => (0..n)
            .map(|k| {
                let lo = freqs[k.saturating_sub(1)];
                let hi = freqs[(k + 1).min(n - 1)];
                0.5 * (hi - lo)
            })
            .collect(),
    }
}
