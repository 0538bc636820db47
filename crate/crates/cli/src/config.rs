//! Scenario configuration file.
//!
//! TOML with four optional sections. Every key has a default matching the
//! typical VHF land mobile system, so an empty file is a complete scenario:
//!
//! ```toml
//! [environment]
//! frequency = 159.025e6        # Hz
//! receiver_temp = 30.0         # dBK
//! galactic_temp = 24.0         # dBK
//! manmade_temp = 31.0          # dBK
//! excess_path_loss = 34.0      # dB
//!
//! [stations.base]
//! antenna_gain = 8.15          # dBi
//! feeder_loss = 2.0            # dB
//! antenna_height = 65.0        # m
//! channel_bandwidth = 15000.0  # Hz
//! sidelobe_param = 0.7
//! # beamwidth = 16.47          # deg, derived from antenna_gain when absent
//!
//! [stations.base.digital]
//! tx_power_typical = 60.0      # W
//! tx_power_min = 20.0          # W
//!
//! [criteria]
//! in_margin = -6.0
//! # symbol_rate = 4800.0       # Hz, defaults to the channel bandwidth
//!
//! [mask]
//! theta_step = 0.5
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;
use vdemask_core::{
    CriteriaParams, GridSpec, LandStation, NoiseEnvironment, Role, Scenario, TxPower,
};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("syntax error in config at line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("unknown config key `{key}`{}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    UnknownKey { key: String, line: Option<usize> },

    #[error("config key `{key}` = {value} is out of range: {reason}")]
    OutOfRange {
        key: String,
        value: f64,
        reason: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvironmentSection {
    pub frequency: f64,
    pub receiver_temp: f64,
    pub galactic_temp: f64,
    pub manmade_temp: f64,
    pub excess_path_loss: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerRow {
    pub tx_power_typical: f64,
    pub tx_power_min: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationSection {
    pub antenna_gain: f64,
    pub feeder_loss: f64,
    pub antenna_height: f64,
    pub channel_bandwidth: f64,
    pub sidelobe_param: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beamwidth: Option<f64>,
    pub digital: PowerRow,
    pub analog: PowerRow,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationsSection {
    pub base: StationSection,
    pub mobile: StationSection,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriteriaSection {
    pub in_margin: f64,
    pub ecc_field: f64,
    pub ecc_bandwidth: f64,
    pub ebn0_required: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbol_rate: Option<f64>,
    pub sinad: f64,
    pub signal_to_distortion: f64,
    pub polarization_relaxation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaskSection {
    pub theta_start: f64,
    pub theta_end: f64,
    pub theta_step: f64,
    pub reference_bandwidth: f64,
}

/// Fully resolved scenario configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub environment: EnvironmentSection,
    pub stations: StationsSection,
    pub criteria: CriteriaSection,
    pub mask: MaskSection,
}

// What the file may contain: every key optional, unknown keys rejected.

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    environment: RawEnvironment,
    #[serde(default)]
    stations: RawStations,
    #[serde(default)]
    criteria: RawCriteria,
    #[serde(default)]
    mask: RawMask,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEnvironment {
    frequency: Option<f64>,
    receiver_temp: Option<f64>,
    galactic_temp: Option<f64>,
    manmade_temp: Option<f64>,
    excess_path_loss: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStations {
    base: Option<RawStation>,
    mobile: Option<RawStation>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStation {
    antenna_gain: Option<f64>,
    feeder_loss: Option<f64>,
    antenna_height: Option<f64>,
    channel_bandwidth: Option<f64>,
    sidelobe_param: Option<f64>,
    beamwidth: Option<f64>,
    digital: Option<RawPower>,
    analog: Option<RawPower>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPower {
    tx_power_typical: Option<f64>,
    tx_power_min: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCriteria {
    in_margin: Option<f64>,
    ecc_field: Option<f64>,
    ecc_bandwidth: Option<f64>,
    ebn0_required: Option<f64>,
    symbol_rate: Option<f64>,
    sinad: Option<f64>,
    signal_to_distortion: Option<f64>,
    polarization_relaxation: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMask {
    theta_start: Option<f64>,
    theta_end: Option<f64>,
    theta_step: Option<f64>,
    reference_bandwidth: Option<f64>,
}

fn power_row(raw: Option<RawPower>, default: TxPower) -> PowerRow {
    let raw = raw.unwrap_or_default();
    PowerRow {
        tx_power_typical: raw.tx_power_typical.unwrap_or(default.typical),
        tx_power_min: raw.tx_power_min.unwrap_or(default.min),
    }
}

fn station(raw: Option<RawStation>, role: Role) -> StationSection {
    let d = LandStation::typical(role);
    let raw = raw.unwrap_or_default();
    StationSection {
        antenna_gain: raw.antenna_gain.unwrap_or(d.antenna_gain),
        feeder_loss: raw.feeder_loss.unwrap_or(d.feeder_loss),
        antenna_height: raw.antenna_height.unwrap_or(d.antenna_height),
        channel_bandwidth: raw.channel_bandwidth.unwrap_or(d.channel_bandwidth),
        sidelobe_param: raw.sidelobe_param.unwrap_or(d.sidelobe_param),
        beamwidth: raw.beamwidth.or(d.beamwidth),
        digital: power_row(raw.digital, d.digital),
        analog: power_row(raw.analog, d.analog),
    }
}

impl From<RawConfig> for ScenarioConfig {
    fn from(raw: RawConfig) -> Self {
        let env = NoiseEnvironment::default();
        let scenario = Scenario::default();
        let c = CriteriaParams::default();
        let g = GridSpec::default();
        let e = raw.environment;
        let k = raw.criteria;
        let m = raw.mask;
        ScenarioConfig {
            environment: EnvironmentSection {
                frequency: e.frequency.unwrap_or(env.frequency),
                receiver_temp: e.receiver_temp.unwrap_or(env.receiver_temp),
                galactic_temp: e.galactic_temp.unwrap_or(env.galactic_temp),
                manmade_temp: e.manmade_temp.unwrap_or(env.manmade_temp),
                excess_path_loss: e.excess_path_loss.unwrap_or(scenario.excess_path_loss),
            },
            stations: StationsSection {
                base: station(raw.stations.base, Role::Base),
                mobile: station(raw.stations.mobile, Role::Mobile),
            },
            criteria: CriteriaSection {
                in_margin: k.in_margin.unwrap_or(c.in_margin),
                ecc_field: k.ecc_field.unwrap_or(c.ecc_field),
                ecc_bandwidth: k.ecc_bandwidth.unwrap_or(c.ecc_bandwidth),
                ebn0_required: k.ebn0_required.unwrap_or(c.ebn0_required),
                symbol_rate: k.symbol_rate.or(c.symbol_rate),
                sinad: k.sinad.unwrap_or(c.sinad),
                signal_to_distortion: k.signal_to_distortion.unwrap_or(c.signal_to_distortion),
                polarization_relaxation: k
                    .polarization_relaxation
                    .unwrap_or(c.polarization_relaxation),
            },
            mask: MaskSection {
                theta_start: m.theta_start.unwrap_or(g.start),
                theta_end: m.theta_end.unwrap_or(g.end),
                theta_step: m.theta_step.unwrap_or(g.step),
                reference_bandwidth: m.reference_bandwidth.unwrap_or(c.reference_bandwidth),
            },
        }
    }
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        RawConfig::default().into()
    }
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Parses config text and applies defaults for every missing key.
pub fn parse_str(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let line = e.span().map(|s| line_of(text, s.start));
        let message = e.message().to_string();
        if let Some(rest) = message.strip_prefix("unknown field `") {
            let key = rest.split('`').next().unwrap_or_default().to_string();
            ConfigError::UnknownKey { key, line }
        } else {
            ConfigError::Syntax {
                line: line.unwrap_or(1),
                message,
            }
        }
    })?;
    let config = ScenarioConfig::from(raw);
    config.validate()?;
    Ok(config)
}

pub fn parse_config(path: &Path) -> Result<ScenarioConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_str(&text)
}

struct Checker(Vec<ConfigError>);

impl Checker {
    fn check(&mut self, key: &str, value: f64, ok: bool, reason: &'static str) {
        if !ok && self.0.is_empty() {
            self.0.push(ConfigError::OutOfRange {
                key: key.to_string(),
                value,
                reason,
            });
        }
    }

    fn finite(&mut self, key: &str, v: f64) {
        self.check(key, v, v.is_finite(), "must be finite");
    }

    fn positive(&mut self, key: &str, v: f64) {
        self.check(key, v, v.is_finite() && v > 0.0, "must be positive");
    }

    fn non_negative(&mut self, key: &str, v: f64) {
        self.check(key, v, v.is_finite() && v >= 0.0, "must not be negative");
    }
}

impl ScenarioConfig {
    /// Range checks, reporting the first offending key.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut c = Checker(Vec::new());
        let e = &self.environment;
        c.positive("environment.frequency", e.frequency);
        c.finite("environment.receiver_temp", e.receiver_temp);
        c.finite("environment.galactic_temp", e.galactic_temp);
        c.finite("environment.manmade_temp", e.manmade_temp);
        c.non_negative("environment.excess_path_loss", e.excess_path_loss);

        for (name, s) in [
            ("base", &self.stations.base),
            ("mobile", &self.stations.mobile),
        ] {
            let key = |k: &str| format!("stations.{name}.{k}");
            c.finite(&key("antenna_gain"), s.antenna_gain);
            c.non_negative(&key("feeder_loss"), s.feeder_loss);
            c.non_negative(&key("antenna_height"), s.antenna_height);
            c.positive(&key("channel_bandwidth"), s.channel_bandwidth);
            c.non_negative(&key("sidelobe_param"), s.sidelobe_param);
            if let Some(bw) = s.beamwidth {
                c.positive(&key("beamwidth"), bw);
            }
            for (m, row) in [("digital", &s.digital), ("analog", &s.analog)] {
                c.positive(&key(&format!("{m}.tx_power_typical")), row.tx_power_typical);
                c.positive(&key(&format!("{m}.tx_power_min")), row.tx_power_min);
                c.check(
                    &key(&format!("{m}.tx_power_min")),
                    row.tx_power_min,
                    row.tx_power_min <= row.tx_power_typical,
                    "must not exceed tx_power_typical",
                );
            }
        }

        let k = &self.criteria;
        c.finite("criteria.in_margin", k.in_margin);
        c.finite("criteria.ecc_field", k.ecc_field);
        c.positive("criteria.ecc_bandwidth", k.ecc_bandwidth);
        c.finite("criteria.ebn0_required", k.ebn0_required);
        if let Some(rs) = k.symbol_rate {
            c.positive("criteria.symbol_rate", rs);
        }
        c.positive("criteria.sinad", k.sinad);
        c.finite("criteria.signal_to_distortion", k.signal_to_distortion);
        c.finite(
            "criteria.polarization_relaxation",
            k.polarization_relaxation,
        );

        let m = &self.mask;
        let in_range = |v: f64| (0.0..=90.0).contains(&v);
        c.check(
            "mask.theta_start",
            m.theta_start,
            in_range(m.theta_start),
            "must lie in [0, 90]",
        );
        c.check(
            "mask.theta_end",
            m.theta_end,
            in_range(m.theta_end),
            "must lie in [0, 90]",
        );
        c.check(
            "mask.theta_end",
            m.theta_end,
            m.theta_end > m.theta_start,
            "must exceed theta_start",
        );
        c.positive("mask.theta_step", m.theta_step);
        c.positive("mask.reference_bandwidth", m.reference_bandwidth);

        match c.0.pop() {
            Some(err) => Err(err),
            None => Ok(()),
        }
    }

    pub fn to_scenario(&self) -> Scenario {
        let e = &self.environment;
        let land = |s: &StationSection| LandStation {
            antenna_gain: s.antenna_gain,
            feeder_loss: s.feeder_loss,
            antenna_height: s.antenna_height,
            channel_bandwidth: s.channel_bandwidth,
            sidelobe_param: s.sidelobe_param,
            beamwidth: s.beamwidth,
            digital: TxPower {
                typical: s.digital.tx_power_typical,
                min: s.digital.tx_power_min,
            },
            analog: TxPower {
                typical: s.analog.tx_power_typical,
                min: s.analog.tx_power_min,
            },
        };
        let k = &self.criteria;
        Scenario {
            environment: NoiseEnvironment {
                receiver_temp: e.receiver_temp,
                galactic_temp: e.galactic_temp,
                manmade_temp: e.manmade_temp,
                frequency: e.frequency,
            },
            excess_path_loss: e.excess_path_loss,
            base: land(&self.stations.base),
            mobile: land(&self.stations.mobile),
            criteria: CriteriaParams {
                in_margin: k.in_margin,
                ecc_field: k.ecc_field,
                ecc_bandwidth: k.ecc_bandwidth,
                ebn0_required: k.ebn0_required,
                symbol_rate: k.symbol_rate,
                sinad: k.sinad,
                signal_to_distortion: k.signal_to_distortion,
                polarization_relaxation: k.polarization_relaxation,
                reference_bandwidth: self.mask.reference_bandwidth,
            },
            grid: GridSpec {
                start: self.mask.theta_start,
                end: self.mask.theta_end,
                step: self.mask.theta_step,
            },
        }
    }

    /// TOML text that parses back to this configuration.
    pub fn to_toml(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# vdemask scenario");
        out.push_str(&toml::to_string(self).expect("plain numeric config serializes"));
        out
    }
}
