//! Maximum-allowed power-flux-density masks protecting VHF land mobile
//! receivers from satellite downlink interference.
//!
//! Three protection criteria are implemented end to end:
//!
//! * interference-to-noise: the interferer must stay a fixed margin below
//!   the receiver noise floor,
//! * field-strength coordination threshold between land mobile networks,
//! * carrier-to-interference: the largest interference that still leaves
//!   digital (C4FM) and analog (FM) links above their quality thresholds.
//!
//! Each criterion yields an interference ceiling per receiving role (base or
//! mobile), which the receive antenna pattern turns into a PFD mask versus
//! elevation angle. [`compliance`] checks a satellite emission against a
//! mask.
//!
//! ```
//! use vdemask_core::{Criterion, Scenario};
//!
//! let eval = Scenario::default().evaluate().unwrap();
//! let ci = eval.envelope(Criterion::ItuCI);
//! assert!((ci.samples()[0].pfd - -151.4).abs() < 0.1);
//! ```

pub mod antenna;
pub mod compliance;
pub mod criteria;
pub mod environment;
pub mod error;
pub mod mask;
pub mod propagation;
pub mod scenario;
pub mod units;

pub use antenna::AntennaPattern;
pub use compliance::{compliance_margin, satellite_pfd, ComplianceReport, SatelliteEmission};
pub use criteria::{CriteriaParams, Criterion, CriterionLimit, Modulation, Role, StationProfile};
pub use environment::NoiseEnvironment;
pub use error::{Error, Result};
pub use mask::{MaskSample, PfdMask};
pub use propagation::PathBudget;
pub use scenario::{Evaluation, GridSpec, LandStation, Scenario, TxPower};
pub use units::{DecibelQuantity, UnitKind};
