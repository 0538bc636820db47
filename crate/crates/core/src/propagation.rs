//! Terrestrial path geometry and loss, plus slant range to a satellite.

use std::f64::consts::PI;

use crate::error::{ensure_finite, ensure_in_range, ensure_positive, Error, Result};

/// Mean Earth radius, m.
pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

pub fn wavelength(frequency: f64) -> Result<f64> {
    ensure_positive("frequency", frequency)?;
    Ok(SPEED_OF_LIGHT / frequency)
}

/// Geometric line-of-sight horizon `√(2·Rₑ·h)` in m (no refraction).
pub fn horizon_distance(antenna_height: f64) -> Result<f64> {
    ensure_finite("antenna height", antenna_height)?;
    if antenna_height < 0.0 {
        return Err(Error::OutOfRange {
            what: "antenna height",
            value: antenna_height,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    Ok((2.0 * EARTH_RADIUS_M * antenna_height).sqrt())
}

/// Free-space loss `20·log10(4π·d·f / c)` in dB.
pub fn free_space_loss(distance: f64, frequency: f64) -> Result<f64> {
    ensure_positive("distance", distance)?;
    ensure_positive("frequency", frequency)?;
    Ok(20.0 * (4.0 * PI * distance * frequency / SPEED_OF_LIGHT).log10())
}

pub fn total_path_loss(free_space: f64, excess: f64) -> f64 {
    free_space + excess
}

/// Distance from a ground point to a satellite at `orbit_altitude` m seen
/// at `theta` degrees elevation, on a spherical Earth.
pub fn slant_range(orbit_altitude: f64, theta: f64) -> Result<f64> {
    ensure_positive("orbit altitude", orbit_altitude)?;
    ensure_in_range("elevation angle", theta, 0.0, 90.0)?;
    let re = EARTH_RADIUS_M;
    let s = theta.to_radians().sin();
    let h = orbit_altitude;
    Ok((re * re * s * s + 2.0 * re * h + h * h).sqrt() - re * s)
}

/// Loss along the line-of-sight link between two land stations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathBudget {
    /// Link distance, m.
    pub distance: f64,
    pub free_space_loss: f64,
    pub excess_loss: f64,
    pub total_loss: f64,
}

impl PathBudget {
    pub fn new(distance: f64, frequency: f64, excess_loss: f64) -> Result<Self> {
        ensure_finite("excess path loss", excess_loss)?;
        if excess_loss < 0.0 {
            return Err(Error::OutOfRange {
                what: "excess path loss",
                value: excess_loss,
                min: 0.0,
                max: f64::INFINITY,
            });
        }
        let free_space_loss = free_space_loss(distance, frequency)?;
        Ok(Self {
            distance,
            free_space_loss,
            excess_loss,
            total_loss: total_path_loss(free_space_loss, excess_loss),
        })
    }

    /// Longest line-of-sight link: the sum of both stations' horizons.
    pub fn line_of_sight(
        height_a: f64,
        height_b: f64,
        frequency: f64,
        excess_loss: f64,
    ) -> Result<Self> {
        let distance = horizon_distance(height_a)? + horizon_distance(height_b)?;
        Self::new(distance, frequency, excess_loss)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    const F0: f64 = 159.025e6;

    #[test]
    fn horizon_examples() {
        let base = horizon_distance(65.0).unwrap();
        let mobile = horizon_distance(2.0).unwrap();
        assert_abs_diff_eq!(base, 28_778.985, epsilon = 1e-3);
        assert_abs_diff_eq!(mobile, 5_048.168, epsilon = 1e-3);
        assert!((base - 29e3).abs() <= 500.0);
        assert!((mobile - 5e3).abs() <= 500.0);
        assert_eq!(horizon_distance(0.0).unwrap(), 0.0);
        assert!(horizon_distance(-1.0).is_err());
    }

    #[test]
    fn free_space_loss_examples() {
        let l = free_space_loss(34e3, F0).unwrap();
        assert_abs_diff_eq!(l, 107.106_669_648, epsilon = 1e-6);
        assert!((l - 107.0).abs() <= 0.5);
        let lambda = wavelength(F0).unwrap();
        assert_abs_diff_eq!(
            free_space_loss(lambda / (4.0 * PI), F0).unwrap(),
            0.0,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            free_space_loss(1e3, F0).unwrap(),
            76.477_091_307,
            epsilon = 1e-6
        );
        assert!(free_space_loss(0.0, F0).is_err());
        assert!(free_space_loss(1e3, -1.0).is_err());
    }

    #[test]
    fn total_loss_examples() {
        assert_abs_diff_eq!(total_path_loss(107.1, 34.0), 141.1, epsilon = 1e-12);
        assert_eq!(total_path_loss(88.0, 0.0), 88.0);
        assert_abs_diff_eq!(total_path_loss(76.5, 34.0), 110.5, epsilon = 1e-12);
    }

    #[test]
    fn line_of_sight_budget() {
        let p = PathBudget::line_of_sight(65.0, 2.0, F0, 34.0).unwrap();
        assert_abs_diff_eq!(p.distance, 33_827.153, epsilon = 1e-3);
        assert_abs_diff_eq!(p.free_space_loss, 107.062_400_357, epsilon = 1e-6);
        assert_eq!(p.total_loss, p.free_space_loss + p.excess_loss);
        assert!((p.total_loss - 141.0).abs() <= 0.5);
        assert!(PathBudget::new(1e3, F0, -1.0).is_err());
    }

    /// Solves the Earth-centre / ground / satellite triangle numerically:
    /// walk along the look direction until the point reaches orbit radius.
    fn slant_range_by_bisection(h: f64, theta_deg: f64) -> f64 {
        let t = theta_deg.to_radians();
        let radius_at = |d: f64| {
            let x = d * t.cos();
            let y = EARTH_RADIUS_M + d * t.sin();
            (x * x + y * y).sqrt()
        };
        let (mut lo, mut hi) = (0.0, 1e8);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if radius_at(mid) < EARTH_RADIUS_M + h {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn slant_range_examples() {
        assert_relative_eq!(
            slant_range(600e3, 90.0).unwrap(),
            600e3,
            max_relative = 1e-12
        );
        let horizon = slant_range(600e3, 0.0).unwrap();
        assert_abs_diff_eq!(
            horizon,
            (2.0 * 6371e3 * 600e3 + 600e3 * 600e3f64).sqrt(),
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(horizon / 1e3, 2_829.346, epsilon = 1e-3);
        let thirty = slant_range(600e3, 30.0).unwrap();
        assert_abs_diff_eq!(
            thirty,
            slant_range_by_bisection(600e3, 30.0),
            epsilon = 1e-3
        );
        assert_abs_diff_eq!(thirty / 1e3, 1_075.088, epsilon = 1e-3);
    }

    #[test]
    fn slant_range_domain() {
        assert!(slant_range(0.0, 10.0).is_err());
        assert!(slant_range(600e3, -0.1).is_err());
        assert!(slant_range(600e3, 90.1).is_err());
    }

    proptest! {
        #[test]
        fn horizon_scales_as_sqrt(h in 0.01f64..10_000.0) {
            let a = horizon_distance(h).unwrap();
            let b = horizon_distance(4.0 * h).unwrap();
            prop_assert!((b / (2.0 * a) - 1.0).abs() <= 1e-9);
            prop_assert!(horizon_distance(h * 1.01).unwrap() > a);
        }

        #[test]
        fn free_space_loss_doubling(d in 1.0f64..1e8, f in 1e6f64..1e11) {
            let l = free_space_loss(d, f).unwrap();
            let six = 20.0 * 2f64.log10();
            prop_assert!((free_space_loss(2.0 * d, f).unwrap() - l - six).abs() <= 1e-9);
            prop_assert!((free_space_loss(d, 2.0 * f).unwrap() - l - six).abs() <= 1e-9);
        }

        #[test]
        fn slant_range_decreases_with_elevation(h in 1e3f64..4e7, a in 0.0f64..89.0, step in 0.01f64..1.0) {
            let lo = slant_range(h, a).unwrap();
            let hi = slant_range(h, (a + step).min(90.0)).unwrap();
            prop_assert!(hi < lo);
            prop_assert!(slant_range(h, 0.0).unwrap() >= h);
        }

        #[test]
        fn slant_range_matches_triangle(h in 1e5f64..4e7, theta in 0.0f64..90.0) {
            let r = slant_range(h, theta).unwrap();
            prop_assert!((r - slant_range_by_bisection(h, theta)).abs() <= 1e-6 * r);
        }
    }
}
