//! Omnidirectional land-station antenna: azimuth-averaged gain versus
//! elevation angle.
//!
//! The main lobe rolls off as `G0 − 12·(θ/θ₃)²` down to the crossover angle
//! θ₄, after which the average sidelobe envelope
//! `G0 − 12 + 10·log10(max(θ/θ₃, 1)^−1.5 + k)` takes over. The gain is
//! clamped to its running minimum so it never rises with elevation.

use crate::error::{ensure_finite, ensure_in_range, ensure_positive, Error, Result};

/// Sidelobe parameter for azimuth-averaged patterns.
pub const DEFAULT_SIDELOBE_PARAM: f64 = 0.7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaPattern {
    peak_gain: f64,
    beamwidth_3db: f64,
    sidelobe_param: f64,
}

/// Elevation 3 dB beamwidth in degrees implied by a peak gain in dBi.
pub fn beamwidth_from_peak_gain(peak_gain: f64) -> f64 {
    107.6 * 10f64.powf(-0.1 * peak_gain)
}

impl AntennaPattern {
    pub fn new(peak_gain: f64, beamwidth_3db: f64, sidelobe_param: f64) -> Result<Self> {
        ensure_finite("peak gain", peak_gain)?;
        ensure_positive("3 dB beamwidth", beamwidth_3db)?;
        ensure_finite("sidelobe parameter", sidelobe_param)?;
        if sidelobe_param < 0.0 {
            return Err(Error::OutOfRange {
                what: "sidelobe parameter",
                value: sidelobe_param,
                min: 0.0,
                max: f64::INFINITY,
            });
        }
        Ok(Self {
            peak_gain,
            beamwidth_3db,
            sidelobe_param,
        })
    }

    /// Pattern with the beamwidth derived from the peak gain.
    pub fn omnidirectional(peak_gain: f64, sidelobe_param: f64) -> Result<Self> {
        ensure_finite("peak gain", peak_gain)?;
        Self::new(
            peak_gain,
            beamwidth_from_peak_gain(peak_gain),
            sidelobe_param,
        )
    }

    pub fn peak_gain(&self) -> f64 {
        self.peak_gain
    }

    pub fn beamwidth_3db(&self) -> f64 {
        self.beamwidth_3db
    }

    pub fn sidelobe_param(&self) -> f64 {
        self.sidelobe_param
    }

    /// Angle θ₄ where the main-lobe parabola hands over to the sidelobe
    /// envelope. Zero when k is so large the envelope sits above the peak.
    pub fn crossover_angle(&self) -> f64 {
        let arg = 1.0 - (self.sidelobe_param + 1.0).log10() / 1.2;
        self.beamwidth_3db * arg.max(0.0).sqrt()
    }

    fn main_lobe(&self, theta: f64) -> f64 {
        let x = theta / self.beamwidth_3db;
        self.peak_gain - 12.0 * x * x
    }

    fn sidelobe_envelope(&self, theta: f64) -> f64 {
        let x = (theta / self.beamwidth_3db).max(1.0);
        self.peak_gain - 12.0 + 10.0 * (x.powf(-1.5) + self.sidelobe_param).log10()
    }

    /// Gain in dBi at `theta` degrees elevation, `0 ≤ θ ≤ 90`.
    pub fn gain(&self, theta: f64) -> Result<f64> {
        ensure_in_range("elevation angle", theta, 0.0, 90.0)?;
        let crossover = self.crossover_angle();
        if theta < crossover {
            return Ok(self.main_lobe(theta));
        }
        // Both branches are non-increasing, so the running minimum over
        // [0, θ] is the smaller of the current envelope value and the main
        // lobe's value at the crossover. The main lobe can never exceed the
        // peak, which pins gain(0) = G0 even when θ₄ = 0.
        let floor = if crossover > 0.0 {
            self.main_lobe(crossover)
        } else {
            self.peak_gain
        };
        Ok(self.sidelobe_envelope(theta).min(floor))
    }

    pub fn gain_curve(&self, thetas: &[f64]) -> Result<Vec<f64>> {
        thetas.iter().map(|&t| self.gain(t)).collect()
    }
}
