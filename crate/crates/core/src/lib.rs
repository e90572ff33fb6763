//! Asymmetric, context-aware trust management for vehicular ad-hoc networks.
//!
//! Vehicles score each other per witnessed event with a severity-scaled penalty
//! and an asymptotic reward ([`local_trust`]). A central authority fuses those
//! scores into evidential global trust with Yager's rule and risk accentuation
//! ([`dst`]) and revokes vehicles whose trust falls too low. [`sim`] runs the
//! whole system against event- and location-aware on-off attackers
//! ([`adversary`]) and [`metrics`] scores the resulting revocations.

use std::fmt;

use serde::{Deserialize, Serialize};

pub mod adversary;
pub mod config;
pub mod context;
pub mod dst;
pub mod error;
pub mod local_trust;
pub mod metrics;
pub mod output;
pub mod sim;
pub mod sweep;

pub use config::{ScenarioConfig, Scheme};
pub use dst::{FusionConfig, MassFunction};
pub use error::{ConfigError, TrustError};
pub use local_trust::TrustParams;
pub use metrics::ConfusionMatrix;
pub use sim::{run, SimulationTrace};

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct VehicleId(pub u32);

impl fmt::Display for VehicleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}
