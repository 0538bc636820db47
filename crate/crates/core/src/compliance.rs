//! Checks a satellite emission against a PFD mask.

use std::f64::consts::PI;

use crate::error::{ensure_positive, Result};
use crate::mask::PfdMask;
use crate::propagation::slant_range;

/// A space station modelled by a single EIRP density toward the ground.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatelliteEmission {
    /// dBW in the mask reference bandwidth. `f64::NEG_INFINITY` means no
    /// emission at all.
    pub eirp_density: f64,
    /// Orbit altitude, m.
    pub orbit_altitude: f64,
}

impl SatelliteEmission {
    pub fn new(eirp_density: f64, orbit_altitude: f64) -> Result<Self> {
        ensure_positive("orbit altitude", orbit_altitude)?;
        Ok(Self {
            eirp_density,
            orbit_altitude,
        })
    }
}

/// PFD at the ground for a satellite seen at `theta` degrees elevation:
/// EIRP spread over a sphere of radius equal to the slant range.
pub fn satellite_pfd(emission: &SatelliteEmission, theta: f64) -> Result<f64> {
    let d = slant_range(emission.orbit_altitude, theta)?;
    Ok(emission.eirp_density - 10.0 * (4.0 * PI * d * d).log10())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginSample {
    pub theta: f64,
    pub mask: f64,
    pub satellite_pfd: f64,
    /// `mask − satellite_pfd`, dB; negative means the mask is exceeded.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplianceReport {
    pub min_margin: f64,
    pub worst_theta: f64,
    pub per_theta: Vec<MarginSample>,
}

impl ComplianceReport {
    pub fn complies(&self) -> bool {
        self.min_margin >= 0.0
    }
}

/// Margin at every mask sample and the worst one (lowest angle on ties).
pub fn compliance_margin(mask: &PfdMask, emission: &SatelliteEmission) -> Result<ComplianceReport> {
    let per_theta = mask
        .samples()
        .iter()
        .map(|s| {
            let sat = satellite_pfd(emission, s.theta)?;
            Ok(MarginSample {
                theta: s.theta,
                mask: s.pfd,
                satellite_pfd: sat,
                margin: s.pfd - sat,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let worst =
        per_theta.iter().skip(1).fold(
            per_theta[0],
            |w, s| if s.margin < w.margin { *s } else { w },
        );
    Ok(ComplianceReport {
        min_margin: worst.margin,
        worst_theta: worst.theta,
        per_theta,
    })
}
