//! Unit conversions used across the crate.

/// Metres per nautical mile.
pub const METRES_PER_NM: f64 = 1852.0;
/// Metres per second in one knot.
pub const MS_PER_KNOT: f64 = 1852.0 / 3600.0;
pub const METRES_PER_FOOT: f64 = 0.3048;

#[inline]
pub fn knots_to_ms(v_kt: f64) -> f64 {
    v_kt * MS_PER_KNOT
}

#[inline]
pub fn ms_to_knots(v_ms: f64) -> f64 {
    v_ms / MS_PER_KNOT
}

#[inline]
pub fn nm_to_m(d_nm: f64) -> f64 {
    d_nm * METRES_PER_NM
}

#[inline]
pub fn m_to_nm(d_m: f64) -> f64 {
    d_m / METRES_PER_NM
}
