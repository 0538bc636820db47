//! Decibel arithmetic shared by every budget in the crate.
//!
//! A [`DecibelQuantity`] is a dB value tagged with what it measures and,
//! for spectral quantities, the bandwidth it is expressed in. Mixing two
//! absolute quantities (say dBW + dBW) is rejected; only a plain ratio may
//! be added to or subtracted from an absolute level.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{ensure_positive, Error, Result};

/// What a dB number is relative to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnitKind {
    /// Dimensionless power ratio (dB).
    Ratio,
    /// Power relative to 1 W (dBW).
    PowerDbw,
    /// Power flux density (dBW/m²).
    PfdDbwPerM2,
    /// Antenna gain relative to an isotropic radiator (dBi).
    GainDbi,
    /// Noise temperature relative to 1 K (dBK).
    TemperatureDbk,
    /// Field strength relative to 1 µV/m (dBµV/m).
    FieldDbuvPerM,
}

impl UnitKind {
    pub fn symbol(self) -> &'static str {
        match self {
            UnitKind::Ratio => "dB",
            UnitKind::PowerDbw => "dBW",
            UnitKind::PfdDbwPerM2 => "dBW/m²",
            UnitKind::GainDbi => "dBi",
            UnitKind::TemperatureDbk => "dBK",
            UnitKind::FieldDbuvPerM => "dBµV/m",
        }
    }
}

impl fmt::Display for UnitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A dB value with its unit kind and optional reference bandwidth in Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecibelQuantity {
    value: f64,
    kind: UnitKind,
    ref_bandwidth: Option<f64>,
}

impl DecibelQuantity {
    /// A quantity without a reference bandwidth.
    pub fn new(value: f64, kind: UnitKind) -> Self {
        Self {
            value,
            kind,
            ref_bandwidth: None,
        }
    }

    pub fn ratio(value: f64) -> Self {
        Self::new(value, UnitKind::Ratio)
    }

    /// A spectral quantity expressed per `bandwidth` Hz.
    pub fn per_bandwidth(value: f64, kind: UnitKind, bandwidth: f64) -> Result<Self> {
        ensure_positive("reference bandwidth", bandwidth)?;
        Ok(Self {
            value,
            kind,
            ref_bandwidth: Some(bandwidth),
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn kind(&self) -> UnitKind {
        self.kind
    }

    pub fn ref_bandwidth(&self) -> Option<f64> {
        self.ref_bandwidth
    }

    /// Linear equivalent of the dB value.
    pub fn linear(&self) -> f64 {
        from_db(self.value)
    }

    /// Adds a dB term. At most one operand may be an absolute kind; the
    /// result keeps the absolute kind and its bandwidth.
    pub fn checked_add(self, other: DecibelQuantity) -> Result<Self> {
        match (self.kind, other.kind) {
            (UnitKind::Ratio, UnitKind::Ratio) => Ok(Self {
                value: self.value + other.value,
                kind: UnitKind::Ratio,
                ref_bandwidth: self.ref_bandwidth.or(other.ref_bandwidth),
            }),
            (_, UnitKind::Ratio) => Ok(Self {
                value: self.value + other.value,
                ..self
            }),
            (UnitKind::Ratio, _) => Ok(Self {
                value: self.value + other.value,
                ..other
            }),
            (left, right) => Err(Error::UnitMismatch { left, right }),
        }
    }

    /// Subtracts a ratio from this quantity.
    pub fn checked_sub(self, ratio: DecibelQuantity) -> Result<Self> {
        if ratio.kind != UnitKind::Ratio {
            return Err(Error::UnitMismatch {
                left: self.kind,
                right: ratio.kind,
            });
        }
        Ok(Self {
            value: self.value - ratio.value,
            ..self
        })
    }

    /// Adds a plain dB offset.
    pub fn offset(self, db: f64) -> Self {
        Self {
            value: self.value + db,
            ..self
        }
    }

    /// Ratio `self / other` between two quantities of the same kind and
    /// bandwidth, e.g. C/N from two powers.
    pub fn ratio_to(&self, other: &DecibelQuantity) -> Result<DecibelQuantity> {
        if self.kind != other.kind {
            return Err(Error::UnitMismatch {
                left: self.kind,
                right: other.kind,
            });
        }
        check_same_bandwidth(self.ref_bandwidth, other.ref_bandwidth)?;
        Ok(DecibelQuantity::ratio(self.value - other.value))
    }

    /// Re-expresses a spectral level in a different reference bandwidth,
    /// assuming the power is spread uniformly.
    pub fn rebandwidth(self, target: f64) -> Result<Self> {
        let current = self
            .ref_bandwidth
            .ok_or(Error::MissingBandwidth(self.kind))?;
        ensure_positive("reference bandwidth", current)?;
        ensure_positive("target bandwidth", target)?;
        if current == target {
            return Ok(self);
        }
        Ok(Self {
            value: self.value - bandwidth_ratio_db(current, target),
            kind: self.kind,
            ref_bandwidth: Some(target),
        })
    }
}

impl fmt::Display for DecibelQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ref_bandwidth {
            Some(bw) => write!(
                f,
                "{:.2} {} per {}",
                self.value,
                self.kind,
                format_bandwidth(bw)
            ),
            None => write!(f, "{:.2} {}", self.value, self.kind),
        }
    }
}

/// `12 kHz`, `4 kHz`, `25 kHz`, `1 Hz`...
pub fn format_bandwidth(hz: f64) -> String {
    if hz >= 1e3 && (hz / 1e3).fract() == 0.0 {
        format!("{} kHz", hz / 1e3)
    } else {
        format!("{hz} Hz")
    }
}

pub(crate) fn check_same_bandwidth(left: Option<f64>, right: Option<f64>) -> Result<()> {
    match (left, right) {
        (Some(l), Some(r)) if l != r => Err(Error::BandwidthMismatch { left: l, right: r }),
        _ => Ok(()),
    }
}

/// `10·log10(x)` for a positive linear power ratio.
pub fn to_db(x: f64) -> Result<f64> {
    ensure_positive("linear ratio", x)?;
    Ok(10.0 * x.log10())
}

/// `10^(x/10)`.
pub fn from_db(x: f64) -> f64 {
    10f64.powf(x / 10.0)
}

/// `10·log10(from / to)`: how many dB a level drops when the same spectral
/// density is integrated over `to` instead of `from`.
pub fn bandwidth_ratio_db(from: f64, to: f64) -> f64 {
    10.0 * (from / to).log10()
}

/// `10·log10(120π)`, the free-space wave impedance in dBΩ.
pub fn free_space_impedance_db() -> f64 {
    10.0 * (120.0 * PI).log10()
}

/// Plane-wave PFD in dBW/m² for a field strength in dBµV/m
/// (`S = E² / 120π`, with the 1 µV → 1 V shift of 120 dB).
pub fn field_strength_to_pfd_db(field_dbuv_per_m: f64) -> f64 {
    field_dbuv_per_m - 120.0 - free_space_impedance_db()
}

/// Typed form of [`field_strength_to_pfd_db`]; keeps the reference bandwidth.
pub fn field_strength_to_pfd(field: DecibelQuantity) -> Result<DecibelQuantity> {
    if field.kind != UnitKind::FieldDbuvPerM {
        return Err(Error::UnitMismatch {
            left: field.kind,
            right: UnitKind::FieldDbuvPerM,
        });
    }
    Ok(DecibelQuantity {
        value: field_strength_to_pfd_db(field.value),
        kind: UnitKind::PfdDbwPerM2,
        ref_bandwidth: field.ref_bandwidth,
    })
}
