use alloc::format;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A fixed route split into equidistant sailing legs.
#[derive(Debug, Clone, PartialEq)]
pub struct Route {
    total_distance_nm: f64,
    n_waypoints: usize,
    leg_length_nm: f64,
}

impl Route {
    pub fn new(total_distance_nm: f64, n_waypoints: usize) -> Result<Self> {
        if !(total_distance_nm.is_finite() && total_distance_nm > 0.0) {
            return Err(Error::invalid(
                "route",
                format!("total distance must be positive, got {total_distance_nm} NM"),
            ));
        }
        if n_waypoints < 2 {
            return Err(Error::invalid(
                "route",
                format!("need at least 2 waypoints, got {n_waypoints}"),
            ));
        }
        Ok(Route {
            total_distance_nm,
            n_waypoints,
            leg_length_nm: total_distance_nm / (n_waypoints - 1) as f64,
        })
    }

    pub fn total_distance_nm(&self) -> f64 {
        self.total_distance_nm
    }

    pub fn n_waypoints(&self) -> usize {
        self.n_waypoints
    }

    pub fn n_legs(&self) -> usize {
        self.n_waypoints - 1
    }

    pub fn leg_length_nm(&self) -> f64 {
        self.leg_length_nm
    }

    /// Along-track position of waypoint `i`; the last waypoint sits exactly
    /// at the total distance.
    pub fn waypoint_range_nm(&self, i: usize) -> f64 {
        if i + 1 >= self.n_waypoints {
            self.total_distance_nm
        } else {
            i as f64 * self.leg_length_nm
        }
    }

    pub fn waypoints_nm(&self) -> Vec<f64> {
        (0..self.n_waypoints).map(|i| self.waypoint_range_nm(i)).collect()
    }

    pub fn leg_lengths_nm(&self) -> Vec<f64> {
        (0..self.n_legs())
            .map(|i| self.waypoint_range_nm(i + 1) - self.waypoint_range_nm(i))
            .collect()
    }
}

/// Splits `total_distance_nm` into `n_waypoints - 1` legs of equal length.
pub fn discretize_route(total_distance_nm: f64, n_waypoints: usize) -> Result<Route> {
    Route::new(total_distance_nm, n_waypoints)
}
