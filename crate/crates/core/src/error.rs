use thiserror::Error;

use crate::units::UnitKind;

/// Errors produced by the budget, pattern and mask computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("{what} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("cannot combine {left} with {right}")]
    UnitMismatch { left: UnitKind, right: UnitKind },

    #[error("{0} quantity carries no reference bandwidth")]
    MissingBandwidth(UnitKind),

    #[error("reference bandwidth mismatch: {left} Hz vs {right} Hz")]
    BandwidthMismatch { left: f64, right: f64 },

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("mask grids differ: {0}")]
    GridMismatch(String),

    #[error("invalid mask: {0}")]
    InvalidMask(String),

    /// The carrier margin cannot absorb any interference at all.
    #[error("infeasible {context} budget: short by {shortfall_db:.2} dB")]
    Infeasible { context: String, shortfall_db: f64 },
}

impl Error {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, Error::Infeasible { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_positive(what: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else if value.is_nan() || value == f64::INFINITY {
        Err(Error::NonFinite { what, value })
    } else {
        Err(Error::NonPositive { what, value })
    }
}

pub(crate) fn ensure_finite(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { what, value })
    }
}

pub(crate) fn ensure_in_range(what: &'static str, value: f64, min: f64, max: f64) -> Result<f64> {
    if (min..=max).contains(&value) {
        Ok(value)
    } else {
        Err(Error::OutOfRange {
            what,
            value,
            min,
            max,
        })
    }
}
