//! Elevation-dependent PFD masks.
//!
//! A receiver that tolerates `I_max` at its input tolerates an incident PFD
//! of `I_max · 4π/λ² · ε / G(θ)`; lower antenna gain at higher elevation
//! lets the mask rise. Per-role masks are composed by pointwise minimum.

use std::f64::consts::PI;

use crate::antenna::AntennaPattern;
use crate::criteria::CriterionLimit;
use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::units::{DecibelQuantity, UnitKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaskSample {
    /// Elevation angle, degrees.
    pub theta: f64,
    /// Maximum allowed PFD, dBW/m² in the mask's reference bandwidth.
    pub pfd: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PfdMask {
    label: String,
    ref_bandwidth: f64,
    samples: Vec<MaskSample>,
}

impl PfdMask {
    /// Builds a mask after checking the sample grid: at least two points,
    /// strictly increasing angles inside [0°, 90°], finite values.
    pub fn new(
        label: impl Into<String>,
        ref_bandwidth: f64,
        samples: Vec<MaskSample>,
    ) -> Result<Self> {
        ensure_positive("reference bandwidth", ref_bandwidth)?;
        if samples.len() < 2 {
            return Err(Error::InvalidMask(format!(
                "need at least 2 samples, got {}",
                samples.len()
            )));
        }
        for s in &samples {
            if !(0.0..=90.0).contains(&s.theta) {
                return Err(Error::InvalidMask(format!(
                    "angle {} outside [0, 90]",
                    s.theta
                )));
            }
            if !s.pfd.is_finite() {
                return Err(Error::InvalidMask(format!(
                    "non-finite value at {}°",
                    s.theta
                )));
            }
        }
        if let Some(w) = samples.windows(2).find(|w| w[1].theta <= w[0].theta) {
            return Err(Error::InvalidMask(format!(
                "angles not strictly increasing at {}°",
                w[1].theta
            )));
        }
        Ok(Self {
            label: label.into(),
            ref_bandwidth,
            samples,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ref_bandwidth(&self) -> f64 {
        self.ref_bandwidth
    }

    pub fn samples(&self) -> &[MaskSample] {
        &self.samples
    }

    pub fn thetas(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.theta)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Value at `theta` by linear interpolation between samples; `None`
    /// outside the sampled range.
    pub fn value_at(&self, theta: f64) -> Option<f64> {
        let first = self.samples.first()?;
        let last = self.samples.last()?;
        if theta < first.theta || theta > last.theta {
            return None;
        }
        let idx = self.samples.partition_point(|s| s.theta < theta);
        let hi = self.samples[idx];
        if hi.theta == theta || idx == 0 {
            return Some(hi.pfd);
        }
        let lo = self.samples[idx - 1];
        let t = (theta - lo.theta) / (hi.theta - lo.theta);
        Some(lo.pfd + t * (hi.pfd - lo.pfd))
    }

    /// Largest change between neighbouring samples, dB.
    pub fn max_step(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| (w[1].pfd - w[0].pfd).abs())
            .fold(0.0, f64::max)
    }

    pub fn min_value(&self) -> MaskSample {
        *self
            .samples
            .iter()
            .min_by(|a, b| a.pfd.total_cmp(&b.pfd))
            .expect("non-empty mask")
    }
}

/// Evenly spaced angles from `start` to `end` inclusive. The last step is
/// shortened if `end − start` is not a multiple of `step`.
pub fn theta_grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    ensure_finite("theta start", start)?;
    ensure_finite("theta end", end)?;
    ensure_positive("theta step", step)?;
    if !(0.0..=90.0).contains(&start) || !(0.0..=90.0).contains(&end) || end <= start {
        return Err(Error::InvalidMask(format!(
            "grid [{start}, {end}] must satisfy 0 ≤ start < end ≤ 90"
        )));
    }
    let n = ((end - start) / step + 1e-9).floor() as usize;
    let mut grid: Vec<f64> = (0..=n).map(|i| start + i as f64 * step).collect();
    if end - grid[n] > 1e-9 {
        grid.push(end);
    } else {
        grid[n] = end;
    }
    Ok(grid)
}

/// Default 0°–90° grid in 0.5° steps.
pub fn default_theta_grid() -> Vec<f64> {
    theta_grid(0.0, 90.0, 0.5).expect("valid default grid")
}

/// `10·log10(4π/λ²)`: converts received power to incident PFD for an
/// isotropic antenna.
pub fn spreading_factor_db(wavelength: f64) -> Result<f64> {
    ensure_positive("wavelength", wavelength)?;
    Ok(10.0 * (4.0 * PI / (wavelength * wavelength)).log10())
}

/// Incident PFD that produces `i_max` dBW at the receiver through an antenna
/// of `gain_at_theta` dBi and a feeder of `feeder_loss` dB.
pub fn pfd_from_interference(
    i_max: f64,
    feeder_loss: f64,
    gain_at_theta: f64,
    wavelength: f64,
) -> Result<f64> {
    Ok(i_max + spreading_factor_db(wavelength)? + feeder_loss - gain_at_theta)
}

/// Mask for one receiving station. The mask takes the bandwidth of
/// `limit.i_max`, so rebandwidth the limit first if needed.
pub fn station_mask(
    limit: &CriterionLimit,
    pattern: &AntennaPattern,
    feeder_loss: f64,
    wavelength: f64,
    grid: &[f64],
) -> Result<PfdMask> {
    let bandwidth = limit
        .i_max
        .ref_bandwidth()
        .ok_or(Error::MissingBandwidth(limit.i_max.kind()))?;
    let samples = grid
        .iter()
        .map(|&theta| {
            let pfd = pfd_from_interference(
                limit.i_max.value(),
                feeder_loss,
                pattern.gain(theta)?,
                wavelength,
            )?;
            Ok(MaskSample { theta, pfd })
        })
        .collect::<Result<Vec<_>>>()?;
    PfdMask::new(
        format!("{} {}", limit.criterion, limit.role),
        bandwidth,
        samples,
    )
}

/// Field-strength threshold mask: the boresight threshold raised by the
/// gain roll-off and the polarization credit.
pub fn ecc_mask(
    threshold: DecibelQuantity,
    pattern: &AntennaPattern,
    polarization: f64,
    grid: &[f64],
) -> Result<PfdMask> {
    if threshold.kind() != UnitKind::PfdDbwPerM2 {
        return Err(Error::UnitMismatch {
            left: threshold.kind(),
            right: UnitKind::PfdDbwPerM2,
        });
    }
    let bandwidth = threshold
        .ref_bandwidth()
        .ok_or(Error::MissingBandwidth(threshold.kind()))?;
    let peak = pattern.gain(0.0)?;
    let samples = grid
        .iter()
        .map(|&theta| {
            Ok(MaskSample {
                theta,
                pfd: threshold.value() + (peak - pattern.gain(theta)?) + polarization,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PfdMask::new("ECC", bandwidth, samples)
}

/// Pointwise minimum of masks sharing one grid and reference bandwidth.
pub fn compose_min(masks: &[PfdMask]) -> Result<PfdMask> {
    let (first, rest) = masks.split_first().ok_or(Error::Empty("mask list"))?;
    for m in rest {
        if m.ref_bandwidth != first.ref_bandwidth {
            return Err(Error::BandwidthMismatch {
                left: first.ref_bandwidth,
                right: m.ref_bandwidth,
            });
        }
        let same_grid = m.samples.len() == first.samples.len()
            && m.thetas().zip(first.thetas()).all(|(a, b)| a == b);
        if !same_grid {
            return Err(Error::GridMismatch(format!(
                "'{}' vs '{}'",
                first.label, m.label
            )));
        }
    }
    let samples = first
        .samples
        .iter()
        .enumerate()
        .map(|(i, s)| MaskSample {
            theta: s.theta,
            pfd: masks
                .iter()
                .map(|m| m.samples[i].pfd)
                .fold(f64::INFINITY, f64::min),
        })
        .collect();
    let label = masks
        .iter()
        .map(|m| m.label.as_str())
        .collect::<Vec<_>>()
        .join(" ∧ ");
    Ok(PfdMask {
        label,
        ref_bandwidth: first.ref_bandwidth,
        samples,
    })
}
