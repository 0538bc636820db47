//! Receiver noise budget.

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::propagation::wavelength;
use crate::units::{from_db, to_db, DecibelQuantity, UnitKind};

/// Boltzmann's constant in J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Boltzmann's constant in dBW/(Hz·K), about −228.6.
pub fn boltzmann_db() -> f64 {
    10.0 * BOLTZMANN.log10()
}

/// Component noise temperatures seen by a VHF land receiver, plus the
/// carrier frequency used to derive wavelengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseEnvironment {
    /// Receiver internal noise temperature, dBK.
    pub receiver_temp: f64,
    /// Galactic noise temperature, dBK.
    pub galactic_temp: f64,
    /// Man-made noise temperature, dBK.
    pub manmade_temp: f64,
    /// Carrier frequency, Hz.
    pub frequency: f64,
}

impl Default for NoiseEnvironment {
    fn default() -> Self {
        Self {
            receiver_temp: 30.0,
            galactic_temp: 24.0,
            manmade_temp: 31.0,
            // middle of 156.0125–162.0375 MHz
            frequency: 159.025e6,
        }
    }
}

impl NoiseEnvironment {
    pub fn new(
        receiver_temp: f64,
        galactic_temp: f64,
        manmade_temp: f64,
        frequency: f64,
    ) -> Result<Self> {
        let env = Self {
            receiver_temp,
            galactic_temp,
            manmade_temp,
            frequency,
        };
        env.validate()?;
        Ok(env)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite("receiver temperature", self.receiver_temp)?;
        ensure_finite("galactic temperature", self.galactic_temp)?;
        ensure_finite("man-made temperature", self.manmade_temp)?;
        ensure_positive("frequency", self.frequency)?;
        Ok(())
    }

    /// Overall equipment temperature T in dBK.
    pub fn system_temperature(&self) -> f64 {
        combine_noise_temperatures(&[self.receiver_temp, self.galactic_temp, self.manmade_temp])
            .expect("three components")
    }

    /// Noise floor N = κTB over `bandwidth` Hz.
    pub fn noise_power(&self, bandwidth: f64) -> Result<DecibelQuantity> {
        noise_power(self.system_temperature(), bandwidth)
    }

    pub fn wavelength(&self) -> f64 {
        wavelength(self.frequency).expect("validated frequency")
    }
}

/// Sums noise temperatures in the linear domain and returns the total in dBK.
pub fn combine_noise_temperatures(components: &[f64]) -> Result<f64> {
    if components.is_empty() {
        return Err(Error::Empty("noise temperature list"));
    }
    let kelvin: f64 = components.iter().map(|&t| from_db(t)).sum();
    to_db(kelvin)
}

/// Thermal noise power κTB in dBW, tagged with `bandwidth` as its reference.
pub fn noise_power(temperature_dbk: f64, bandwidth: f64) -> Result<DecibelQuantity> {
    ensure_positive("noise bandwidth", bandwidth)?;
    let value = boltzmann_db() + temperature_dbk + 10.0 * bandwidth.log10();
    DecibelQuantity::per_bandwidth(value, UnitKind::PowerDbw, bandwidth)
}
