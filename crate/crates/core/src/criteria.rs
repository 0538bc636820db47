//! Maximum tolerable interference at a land receiver under the three
//! protection criteria: interference-to-noise, field-strength coordination
//! threshold and carrier-to-interference.

use std::fmt;

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::units::{
    check_same_bandwidth, field_strength_to_pfd, from_db, to_db, DecibelQuantity, UnitKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Base,
    Mobile,
}

impl Role {
    pub const ALL: [Role; 2] = [Role::Base, Role::Mobile];

    /// The station on the far end of a base–mobile link.
    pub fn counterpart(self) -> Role {
        match self {
            Role::Base => Role::Mobile,
            Role::Mobile => Role::Base,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Role::Base => "base",
            Role::Mobile => "mobile",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modulation {
    /// C4FM.
    Digital,
    /// FM.
    Analog,
}

impl Modulation {
    pub fn name(self) -> &'static str {
        match self {
            Modulation::Digital => "digital",
            Modulation::Analog => "analog",
        }
    }
}

impl fmt::Display for Modulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    /// ITU interference-to-noise ratio.
    ItuIN,
    /// ECC field-strength coordination threshold.
    EccField,
    /// ITU carrier-to-interference (performance based).
    ItuCI,
}

impl Criterion {
    pub const ALL: [Criterion; 3] = [Criterion::ItuIN, Criterion::EccField, Criterion::ItuCI];

    /// Short selector used on the command line.
    pub fn key(self) -> &'static str {
        match self {
            Criterion::ItuIN => "in",
            Criterion::EccField => "ecc",
            Criterion::ItuCI => "ci",
        }
    }

    pub fn from_key(key: &str) -> Option<Criterion> {
        Criterion::ALL.into_iter().find(|c| c.key() == key)
    }

    pub fn label(self) -> &'static str {
        match self {
            Criterion::ItuIN => "ITU I/N",
            Criterion::EccField => "ECC",
            Criterion::ItuCI => "ITU C/I",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One land station transmitter/receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationProfile {
    pub role: Role,
    pub modulation: Modulation,
    /// Typical output power, W.
    pub tx_power_typical: f64,
    /// Minimum output power, W.
    pub tx_power_min: f64,
    /// Peak antenna gain, dBi.
    pub antenna_gain: f64,
    /// Feeder loss, dB.
    pub feeder_loss: f64,
    /// Antenna height above ground, m.
    pub antenna_height: f64,
    /// Receiver channel bandwidth, Hz.
    pub channel_bandwidth: f64,
}

impl StationProfile {
    /// Typical VHF land mobile parameters for a role and modulation.
    pub fn typical(role: Role, modulation: Modulation) -> Self {
        let (typical, min) = match (role, modulation) {
            (Role::Base, Modulation::Digital) => (60.0, 20.0),
            (Role::Base, Modulation::Analog) => (30.0, 5.0),
            (Role::Mobile, Modulation::Digital) => (30.0, 1.0),
            (Role::Mobile, Modulation::Analog) => (1.0, 1.0),
        };
        let (antenna_gain, feeder_loss, antenna_height) = match role {
            Role::Base => (8.15, 2.0, 65.0),
            Role::Mobile => (2.15, 1.0, 2.0),
        };
        Self {
            role,
            modulation,
            tx_power_typical: typical,
            tx_power_min: min,
            antenna_gain,
            feeder_loss,
            antenna_height,
            channel_bandwidth: 15e3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("minimum transmit power", self.tx_power_min)?;
        ensure_positive("typical transmit power", self.tx_power_typical)?;
        if self.tx_power_min > self.tx_power_typical {
            return Err(Error::OutOfRange {
                what: "minimum transmit power",
                value: self.tx_power_min,
                min: 0.0,
                max: self.tx_power_typical,
            });
        }
        ensure_finite("antenna gain", self.antenna_gain)?;
        ensure_finite("feeder loss", self.feeder_loss)?;
        if self.feeder_loss < 0.0 {
            return Err(Error::OutOfRange {
                what: "feeder loss",
                value: self.feeder_loss,
                min: 0.0,
                max: f64::INFINITY,
            });
        }
        ensure_finite("antenna height", self.antenna_height)?;
        ensure_positive("channel bandwidth", self.channel_bandwidth)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriteriaParams {
    /// Allowed I/N, dB.
    pub in_margin: f64,
    /// Coordination field strength, dBµV/m per `ecc_bandwidth`.
    pub ecc_field: f64,
    /// Bandwidth of the coordination threshold, Hz.
    pub ecc_bandwidth: f64,
    /// Required Eb/N0 of the digital system, dB.
    pub ebn0_required: f64,
    /// Digital symbol rate, Hz. `None` means equal to the channel bandwidth.
    pub symbol_rate: Option<f64>,
    /// Required SINAD of the analog system, dB.
    pub sinad: f64,
    /// Signal-to-distortion ratio C/D of the analog system, dB.
    pub signal_to_distortion: f64,
    /// Circular-to-linear polarization mismatch credited to the limit, dB.
    pub polarization_relaxation: f64,
    /// Bandwidth PFD masks are expressed in, Hz.
    pub reference_bandwidth: f64,
}

impl Default for CriteriaParams {
    fn default() -> Self {
        Self {
            in_margin: -6.0,
            ecc_field: 12.0,
            ecc_bandwidth: 25e3,
            ebn0_required: 10.0,
            symbol_rate: None,
            sinad: 12.0,
            signal_to_distortion: 20.0,
            polarization_relaxation: 3.0,
            reference_bandwidth: 4e3,
        }
    }
}

impl CriteriaParams {
    pub fn validate(&self) -> Result<()> {
        ensure_finite("I/N margin", self.in_margin)?;
        ensure_finite("ECC field strength", self.ecc_field)?;
        ensure_positive("ECC bandwidth", self.ecc_bandwidth)?;
        ensure_finite("required Eb/N0", self.ebn0_required)?;
        if let Some(rs) = self.symbol_rate {
            ensure_positive("symbol rate", rs)?;
        }
        ensure_positive("SINAD", self.sinad)?;
        ensure_finite("signal to distortion", self.signal_to_distortion)?;
        ensure_finite("polarization relaxation", self.polarization_relaxation)?;
        ensure_positive("reference bandwidth", self.reference_bandwidth)?;
        Ok(())
    }

    pub fn symbol_rate_for(&self, channel_bandwidth: f64) -> f64 {
        self.symbol_rate.unwrap_or(channel_bandwidth)
    }
}

/// A named step of a budget chain.
#[derive(Debug, Clone, PartialEq)]
pub struct Intermediate {
    pub name: &'static str,
    pub value: DecibelQuantity,
}

/// Maximum tolerable interference for one criterion and receiving role.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionLimit {
    pub criterion: Criterion,
    pub role: Role,
    pub i_max: DecibelQuantity,
    pub intermediates: Vec<Intermediate>,
}

impl CriterionLimit {
    pub fn intermediate(&self, name: &str) -> Option<DecibelQuantity> {
        self.intermediates
            .iter()
            .find(|i| i.name == name)
            .map(|i| i.value)
    }
}

fn step(name: &'static str, value: DecibelQuantity) -> Intermediate {
    Intermediate { name, value }
}

/// I/N chain: margin on the noise floor, polarization credit, then
/// renormalization to the reference bandwidth.
pub fn in_interference_limit(
    role: Role,
    noise: DecibelQuantity,
    params: &CriteriaParams,
) -> Result<CriterionLimit> {
    if noise.kind() != UnitKind::PowerDbw {
        return Err(Error::UnitMismatch {
            left: noise.kind(),
            right: UnitKind::PowerDbw,
        });
    }
    let at_receiver = noise.checked_add(DecibelQuantity::ratio(params.in_margin))?;
    let at_antenna =
        at_receiver.checked_add(DecibelQuantity::ratio(params.polarization_relaxation))?;
    let reference = at_antenna.rebandwidth(params.reference_bandwidth)?;
    Ok(CriterionLimit {
        criterion: Criterion::ItuIN,
        role,
        i_max: reference,
        intermediates: vec![
            step("noise", noise),
            step("i_receiver", at_receiver),
            step("i_antenna", at_antenna),
            step("i_reference", reference),
        ],
    })
}

/// Coordination field strength turned into a PFD in the reference bandwidth.
pub fn ecc_pfd_threshold(params: &CriteriaParams) -> Result<DecibelQuantity> {
    let field = DecibelQuantity::per_bandwidth(
        params.ecc_field,
        UnitKind::FieldDbuvPerM,
        params.ecc_bandwidth,
    )?;
    field_strength_to_pfd(field.rebandwidth(params.reference_bandwidth)?)
}

/// Minimum EIRP in dBW: lowest output power times antenna gain, net of feeder.
pub fn min_eirp(station: &StationProfile) -> f64 {
    10.0 * station.tx_power_min.log10() + station.antenna_gain - station.feeder_loss
}

/// Minimum carrier power in dBW at `rx` when `tx` transmits at minimum EIRP
/// over a path of `path_loss` dB.
pub fn sensitivity(tx: &StationProfile, rx: &StationProfile, path_loss: f64) -> Result<f64> {
    ensure_positive("path loss", path_loss)?;
    Ok(min_eirp(tx) - path_loss + rx.antenna_gain - rx.feeder_loss)
}

/// Required C/(N+I) of the digital system, dB.
pub fn required_cnir_digital(ebn0: f64, symbol_rate: f64, bandwidth: f64) -> Result<f64> {
    ensure_positive("symbol rate", symbol_rate)?;
    ensure_positive("channel bandwidth", bandwidth)?;
    Ok(ebn0 + 10.0 * (2.0 * symbol_rate / bandwidth).log10())
}

/// Required C/I and the resulting interference ceiling for one link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierLimit {
    /// Minimum carrier-to-interference ratio, dB.
    pub c_over_i: f64,
    /// Maximum interference power, dBW in the channel bandwidth.
    pub i_max: f64,
}

/// Digital link: C/(N+I) ≥ ζ_d solved for the largest I.
pub fn digital_interference_limit(c_min: f64, noise: f64, zeta_d: f64) -> Result<CarrierLimit> {
    let n_over_c = from_db(noise - c_min);
    let budget = 1.0 / from_db(zeta_d) - n_over_c;
    if budget <= 0.0 {
        return Err(Error::Infeasible {
            context: "digital C/I".into(),
            shortfall_db: zeta_d - (c_min - noise),
        });
    }
    let c_over_i = -to_db(budget)?;
    Ok(CarrierLimit {
        c_over_i,
        i_max: c_min - c_over_i,
    })
}

/// Analog link: SINAD ≥ ζ_a with noise, interference and distortion as the
/// unwanted power, solved for the largest I.
pub fn analog_interference_limit(
    c_min: f64,
    noise: f64,
    sinad: f64,
    c_over_d: f64,
) -> Result<CarrierLimit> {
    ensure_positive("SINAD", sinad)?;
    let unwanted = from_db(noise - c_min) + from_db(-c_over_d);
    let allowed = 1.0 / (from_db(sinad) - 1.0);
    let budget = allowed - unwanted;
    if budget <= 0.0 {
        return Err(Error::Infeasible {
            context: "analog C/I".into(),
            shortfall_db: to_db(unwanted / allowed)?,
        });
    }
    let c_over_i = -to_db(budget)?;
    Ok(CarrierLimit {
        c_over_i,
        i_max: c_min - c_over_i,
    })
}

/// The stricter of the digital and analog ceilings plus the polarization
/// credit.
pub fn combined_ci_limit(
    digital: DecibelQuantity,
    analog: DecibelQuantity,
    polarization: f64,
) -> Result<DecibelQuantity> {
    if digital.kind() != analog.kind() {
        return Err(Error::UnitMismatch {
            left: digital.kind(),
            right: analog.kind(),
        });
    }
    check_same_bandwidth(digital.ref_bandwidth(), analog.ref_bandwidth())?;
    let stricter = if analog.value() < digital.value() {
        analog
    } else {
        digital
    };
    stricter.checked_add(DecibelQuantity::ratio(polarization))
}

/// Transmitters and receivers taking part in the C/I evaluation for one
/// receiving role.
#[derive(Debug, Clone, Copy)]
pub struct CarrierLinks<'a> {
    pub digital_tx: &'a StationProfile,
    pub digital_rx: &'a StationProfile,
    pub analog_tx: &'a StationProfile,
    pub analog_rx: &'a StationProfile,
}

/// Full C/I evaluation for one receiving role. Per-modulation limits are
/// recorded as intermediates in the receiver's channel bandwidth; `i_max`
/// keeps that bandwidth as well.
pub fn ci_interference_limit(
    role: Role,
    links: CarrierLinks<'_>,
    path_loss: f64,
    noise: DecibelQuantity,
    params: &CriteriaParams,
) -> Result<CriterionLimit> {
    let bandwidth = noise
        .ref_bandwidth()
        .ok_or(Error::MissingBandwidth(noise.kind()))?;
    let dbw = |v: f64| DecibelQuantity::per_bandwidth(v, UnitKind::PowerDbw, bandwidth);

    let zeta_d = required_cnir_digital(
        params.ebn0_required,
        params.symbol_rate_for(links.digital_rx.channel_bandwidth),
        links.digital_rx.channel_bandwidth,
    )?;
    let c_digital = sensitivity(links.digital_tx, links.digital_rx, path_loss)?;
    let c_analog = sensitivity(links.analog_tx, links.analog_rx, path_loss)?;

    let with_context = |e: Error, what: &str| match e {
        Error::Infeasible { shortfall_db, .. } => Error::Infeasible {
            context: format!("{what} ({role} receiver)"),
            shortfall_db,
        },
        other => other,
    };
    let digital = digital_interference_limit(c_digital, noise.value(), zeta_d)
        .map_err(|e| with_context(e, "digital C/I"))?;
    let analog = analog_interference_limit(
        c_analog,
        noise.value(),
        params.sinad,
        params.signal_to_distortion,
    )
    .map_err(|e| with_context(e, "analog C/I"))?;

    let i_digital = dbw(digital.i_max)?;
    let i_analog = dbw(analog.i_max)?;
    let combined = combined_ci_limit(i_digital, i_analog, params.polarization_relaxation)?;

    Ok(CriterionLimit {
        criterion: Criterion::ItuCI,
        role,
        i_max: combined,
        intermediates: vec![
            step("noise", noise),
            step(
                "eirp_digital_tx",
                DecibelQuantity::new(min_eirp(links.digital_tx), UnitKind::PowerDbw),
            ),
            step(
                "eirp_analog_tx",
                DecibelQuantity::new(min_eirp(links.analog_tx), UnitKind::PowerDbw),
            ),
            step("c_min_digital", dbw(c_digital)?),
            step("c_min_analog", dbw(c_analog)?),
            step(
                "c_over_n_digital",
                DecibelQuantity::ratio(c_digital - noise.value()),
            ),
            step(
                "c_over_n_analog",
                DecibelQuantity::ratio(c_analog - noise.value()),
            ),
            step("zeta_d", DecibelQuantity::ratio(zeta_d)),
            step("c_over_i_digital", DecibelQuantity::ratio(digital.c_over_i)),
            step("i_max_digital", i_digital),
            step("c_over_i_analog", DecibelQuantity::ratio(analog.c_over_i)),
            step("i_max_analog", i_analog),
            step("i_max_combined", combined),
        ],
    })
}
