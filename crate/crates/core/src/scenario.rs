//! End-to-end evaluation: noise floor, path, per-role limits and the three
//! envelope masks for one set of land mobile parameters.

use crate::antenna::{AntennaPattern, DEFAULT_SIDELOBE_PARAM};
use crate::criteria::{
    ci_interference_limit, ecc_pfd_threshold, in_interference_limit, CarrierLinks, CriteriaParams,
    Criterion, CriterionLimit, Modulation, Role, StationProfile,
};
use crate::environment::NoiseEnvironment;
use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::mask::{compose_min, ecc_mask, station_mask, theta_grid, PfdMask};
use crate::propagation::{horizon_distance, PathBudget};
use crate::units::{DecibelQuantity, UnitKind};

/// Output power pair of one transmitter type, W.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TxPower {
    pub typical: f64,
    pub min: f64,
}

/// Parameters shared by all equipment of one role, plus the power rows of
/// its digital and analog transmitters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandStation {
    pub antenna_gain: f64,
    pub feeder_loss: f64,
    pub antenna_height: f64,
    pub channel_bandwidth: f64,
    pub sidelobe_param: f64,
    /// Elevation beamwidth override, degrees; derived from the gain if unset.
    pub beamwidth: Option<f64>,
    pub digital: TxPower,
    pub analog: TxPower,
}

impl LandStation {
    pub fn typical(role: Role) -> Self {
        let d = StationProfile::typical(role, Modulation::Digital);
        let a = StationProfile::typical(role, Modulation::Analog);
        Self {
            antenna_gain: d.antenna_gain,
            feeder_loss: d.feeder_loss,
            antenna_height: d.antenna_height,
            channel_bandwidth: d.channel_bandwidth,
            sidelobe_param: DEFAULT_SIDELOBE_PARAM,
            beamwidth: None,
            digital: TxPower {
                typical: d.tx_power_typical,
                min: d.tx_power_min,
            },
            analog: TxPower {
                typical: a.tx_power_typical,
                min: a.tx_power_min,
            },
        }
    }

    pub fn profile(&self, role: Role, modulation: Modulation) -> StationProfile {
        let power = match modulation {
            Modulation::Digital => self.digital,
            Modulation::Analog => self.analog,
        };
        StationProfile {
            role,
            modulation,
            tx_power_typical: power.typical,
            tx_power_min: power.min,
            antenna_gain: self.antenna_gain,
            feeder_loss: self.feeder_loss,
            antenna_height: self.antenna_height,
            channel_bandwidth: self.channel_bandwidth,
        }
    }

    pub fn pattern(&self) -> Result<AntennaPattern> {
        match self.beamwidth {
            Some(bw) => AntennaPattern::new(self.antenna_gain, bw, self.sidelobe_param),
            None => AntennaPattern::omnidirectional(self.antenna_gain, self.sidelobe_param),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            start: 0.0,
            end: 90.0,
            step: 0.5,
        }
    }
}

impl GridSpec {
    pub fn thetas(&self) -> Result<Vec<f64>> {
        theta_grid(self.start, self.end, self.step)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub environment: NoiseEnvironment,
    /// Terrestrial loss on top of free space, dB.
    pub excess_path_loss: f64,
    pub base: LandStation,
    pub mobile: LandStation,
    pub criteria: CriteriaParams,
    pub grid: GridSpec,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            environment: NoiseEnvironment::default(),
            excess_path_loss: 34.0,
            base: LandStation::typical(Role::Base),
            mobile: LandStation::typical(Role::Mobile),
            criteria: CriteriaParams::default(),
            grid: GridSpec::default(),
        }
    }
}

/// Everything computed for one receiving role.
#[derive(Debug, Clone, PartialEq)]
pub struct RoleEvaluation {
    pub role: Role,
    pub pattern: AntennaPattern,
    pub feeder_loss: f64,
    pub horizon: f64,
    /// Noise floor in the receiver channel bandwidth.
    pub noise: DecibelQuantity,
    pub in_limit: CriterionLimit,
    /// C/I limit in the receiver channel bandwidth.
    pub ci_limit: CriterionLimit,
    /// C/I limit renormalized to the mask reference bandwidth.
    pub ci_reference: DecibelQuantity,
    pub in_mask: PfdMask,
    pub ecc_mask: PfdMask,
    pub ci_mask: PfdMask,
}

impl RoleEvaluation {
    pub fn mask(&self, criterion: Criterion) -> &PfdMask {
        match criterion {
            Criterion::ItuIN => &self.in_mask,
            Criterion::EccField => &self.ecc_mask,
            Criterion::ItuCI => &self.ci_mask,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub system_temperature: f64,
    pub wavelength: f64,
    pub path: PathBudget,
    /// Coordination field strength in the mask reference bandwidth.
    pub ecc_field_reference: DecibelQuantity,
    pub ecc_threshold: DecibelQuantity,
    pub base: RoleEvaluation,
    pub mobile: RoleEvaluation,
    pub in_envelope: PfdMask,
    pub ecc_envelope: PfdMask,
    pub ci_envelope: PfdMask,
}

impl Evaluation {
    pub fn role(&self, role: Role) -> &RoleEvaluation {
        match role {
            Role::Base => &self.base,
            Role::Mobile => &self.mobile,
        }
    }

    pub fn envelope(&self, criterion: Criterion) -> &PfdMask {
        match criterion {
            Criterion::ItuIN => &self.in_envelope,
            Criterion::EccField => &self.ecc_envelope,
            Criterion::ItuCI => &self.ci_envelope,
        }
    }
}

impl Scenario {
    pub fn station(&self, role: Role) -> &LandStation {
        match role {
            Role::Base => &self.base,
            Role::Mobile => &self.mobile,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.environment.validate()?;
        ensure_finite("excess path loss", self.excess_path_loss)?;
        if self.excess_path_loss < 0.0 {
            return Err(Error::OutOfRange {
                what: "excess path loss",
                value: self.excess_path_loss,
                min: 0.0,
                max: f64::INFINITY,
            });
        }
        self.criteria.validate()?;
        for role in Role::ALL {
            let station = self.station(role);
            for m in [Modulation::Digital, Modulation::Analog] {
                station.profile(role, m).validate()?;
            }
            if let Some(bw) = station.beamwidth {
                ensure_positive("beamwidth", bw)?;
            }
            station.pattern()?;
        }
        self.grid.thetas()?;
        Ok(())
    }

    pub fn evaluate(&self) -> Result<Evaluation> {
        self.validate()?;
        let grid = self.grid.thetas()?;
        let wavelength = self.environment.wavelength();
        let path = PathBudget::line_of_sight(
            self.base.antenna_height,
            self.mobile.antenna_height,
            self.environment.frequency,
            self.excess_path_loss,
        )?;
        let params = &self.criteria;
        let ecc_field_reference = DecibelQuantity::per_bandwidth(
            params.ecc_field,
            UnitKind::FieldDbuvPerM,
            params.ecc_bandwidth,
        )?
        .rebandwidth(params.reference_bandwidth)?;
        let ecc_threshold = ecc_pfd_threshold(params)?;

        let base = self.evaluate_role(Role::Base, &path, wavelength, ecc_threshold, &grid)?;
        let mobile = self.evaluate_role(Role::Mobile, &path, wavelength, ecc_threshold, &grid)?;

        let envelope = |c: Criterion| {
            compose_min(&[base.mask(c).clone(), mobile.mask(c).clone()])
                .map(|m| m.with_label(c.label()))
        };
        Ok(Evaluation {
            system_temperature: self.environment.system_temperature(),
            wavelength,
            path,
            ecc_field_reference,
            ecc_threshold,
            in_envelope: envelope(Criterion::ItuIN)?,
            ecc_envelope: envelope(Criterion::EccField)?,
            ci_envelope: envelope(Criterion::ItuCI)?,
            base,
            mobile,
        })
    }

    fn evaluate_role(
        &self,
        role: Role,
        path: &PathBudget,
        wavelength: f64,
        ecc_threshold: DecibelQuantity,
        grid: &[f64],
    ) -> Result<RoleEvaluation> {
        let rx = self.station(role);
        let tx = self.station(role.counterpart());
        let params = &self.criteria;
        let pattern = rx.pattern()?;
        let noise = self.environment.noise_power(rx.channel_bandwidth)?;

        let in_limit = in_interference_limit(role, noise, params)?;

        let digital_tx = tx.profile(role.counterpart(), Modulation::Digital);
        let analog_tx = tx.profile(role.counterpart(), Modulation::Analog);
        let digital_rx = rx.profile(role, Modulation::Digital);
        let analog_rx = rx.profile(role, Modulation::Analog);
        let ci_limit = ci_interference_limit(
            role,
            CarrierLinks {
                digital_tx: &digital_tx,
                digital_rx: &digital_rx,
                analog_tx: &analog_tx,
                analog_rx: &analog_rx,
            },
            path.total_loss,
            noise,
            params,
        )?;
        let ci_reference = ci_limit.i_max.rebandwidth(params.reference_bandwidth)?;
        let ci_for_mask = CriterionLimit {
            i_max: ci_reference,
            ..ci_limit.clone()
        };

        let in_mask = station_mask(&in_limit, &pattern, rx.feeder_loss, wavelength, grid)?;
        let ci_mask = station_mask(&ci_for_mask, &pattern, rx.feeder_loss, wavelength, grid)?;
        let ecc_mask = ecc_mask(
            ecc_threshold,
            &pattern,
            params.polarization_relaxation,
            grid,
        )?
        .with_label(format!("{} {}", Criterion::EccField, role));

        Ok(RoleEvaluation {
            role,
            pattern,
            feeder_loss: rx.feeder_loss,
            horizon: horizon_distance(rx.antenna_height)?,
            noise,
            in_limit,
            ci_limit,
            ci_reference,
            in_mask,
            ecc_mask,
            ci_mask,
        })
    }
}
