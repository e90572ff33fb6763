//! Scenario configuration, loaded from JSON.
//!
//! Every field has a default, so a config file only needs the values it
//! changes. Unknown fields are rejected so typos surface as errors.

use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::adversary::{AttackKind, AttackerProfile};
use crate::context::AdmissionConfig;
use crate::dst::FusionConfig;
use crate::error::ConfigError;
use crate::local_trust::TrustParams;

/// Global-trust algorithm run by the central authority.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    #[default]
    Ipek,
    /// Reporter-weighted averaging comparator. Not a reimplementation of any
    /// published scheme.
    SymmetricBaseline,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Ipek => "ipek",
            Scheme::SymmetricBaseline => "symmetric_baseline",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EventScheduleConfig {
    pub n_events: u32,
    /// Window over which events make their first appearance, in id order.
    pub stagger_s: f64,
    /// Passive gap before an event reappears elsewhere.
    pub reappear_gap_s: (f64, f64),
    /// How long a finished event stays observable in the passive state.
    pub clearance_s: f64,
}

impl Default for EventScheduleConfig {
    fn default() -> Self {
        EventScheduleConfig {
            n_events: 40,
            stagger_s: 400.0,
            reappear_gap_s: (30.0, 120.0),
            clearance_s: 30.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MobilityConfig {
    pub speed_mps: (f64, f64),
    /// Distance within which a vehicle observes an event directly.
    pub witness_radius_m: f64,
    /// Vehicles enter uniformly over this leading fraction of the run.
    pub entry_window_fraction: f64,
    /// Re-broadcast period for an unchanged status while witnessing.
    pub rebroadcast_period_s: f64,
}

impl Default for MobilityConfig {
    fn default() -> Self {
        MobilityConfig {
            speed_mps: (10.0, 20.0),
            witness_radius_m: 300.0,
            entry_window_fraction: 0.2,
            rebroadcast_period_s: 5.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AttackConfig {
    pub theta_event: f64,
    pub theta_location: f64,
    pub collusion_low: f64,
    pub collusion_high: f64,
    /// Share of attackers using the event-aware strategy; the rest are location-aware.
    pub event_aware_share: f64,
}

impl Default for AttackConfig {
    fn default() -> Self {
        AttackConfig {
            theta_event: 0.6,
            theta_location: 0.4,
            collusion_low: 0.1,
            collusion_high: 0.9,
            event_aware_share: 0.5,
        }
    }
}

impl AttackConfig {
    pub fn profile(&self, kind: AttackKind) -> AttackerProfile {
        let theta = match kind {
            AttackKind::EventAware => self.theta_event,
            AttackKind::LocationAware => self.theta_location,
        };
        AttackerProfile::new(kind, theta, self.collusion_low, self.collusion_high)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub seed: u64,
    pub scheme: Scheme,
    pub n_vehicles: u32,
    pub grid_size_m: f64,
    pub sim_duration_s: f64,
    pub step_s: f64,
    pub attacker_ratio: f64,
    pub gt_update_interval_s: f64,
    /// Global trust strictly below this revokes a vehicle.
    pub revocation_threshold: f64,
    /// Local trust reports older than this are discarded by the authority.
    pub report_timeout_s: f64,
    pub trust: TrustParams,
    pub fusion: FusionConfig,
    pub admission: AdmissionConfig,
    pub events: EventScheduleConfig,
    pub mobility: MobilityConfig,
    pub attack: AttackConfig,
    /// Replays a schedule previously written by a run instead of generating one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schedule_file: Option<String>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            seed: 1,
            scheme: Scheme::Ipek,
            n_vehicles: 150,
            grid_size_m: 4000.0,
            sim_duration_s: 2400.0,
            step_s: 1.0,
            attacker_ratio: 0.15,
            gt_update_interval_s: 50.0,
            revocation_threshold: 0.3,
            report_timeout_s: 100.0,
            trust: TrustParams::default(),
            fusion: FusionConfig::default(),
            admission: AdmissionConfig::default(),
            events: EventScheduleConfig::default(),
            mobility: MobilityConfig::default(),
            attack: AttackConfig::default(),
            schedule_file: None,
        }
    }
}

/// Parses JSON, reporting failures with the dotted path of the offending field.
pub(crate) fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|err| {
        let field = err.path().to_string();
        let inner = err.into_inner();
        ConfigError::Parse {
            field,
            message: strip_position(&inner.to_string()),
            line: inner.line(),
            column: inner.column(),
        }
    })
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })
}

impl ScenarioConfig {
    pub fn from_json_str(text: &str) -> Result<Self, ConfigError> {
        let cfg: ScenarioConfig = parse_json(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        Self::from_json_str(&read_file(path.as_ref())?)
    }

    pub fn n_attackers(&self) -> u32 {
        (self.attacker_ratio * f64::from(self.n_vehicles)).round() as u32
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |field: &str, message: String| ConfigError::invalid(field, message);
        let positive = |field: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(invalid(field, format!("must be positive, got {v}")))
            }
        };
        let unit = |field: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(invalid(field, format!("must lie in [0, 1], got {v}")))
            }
        };
        let ordered = |field: &str, (lo, hi): (f64, f64)| {
            if lo >= 0.0 && lo <= hi {
                Ok(())
            } else {
                Err(invalid(
                    field,
                    format!("expected 0 <= min <= max, got ({lo}, {hi})"),
                ))
            }
        };

        if self.n_vehicles == 0 {
            return Err(invalid("n_vehicles", "must be at least 1".to_string()));
        }
        positive("grid_size_m", self.grid_size_m)?;
        positive("sim_duration_s", self.sim_duration_s)?;
        positive("step_s", self.step_s)?;
        if !(0.0..1.0).contains(&self.attacker_ratio) {
            return Err(invalid(
                "attacker_ratio",
                format!("must lie in [0, 1), got {}", self.attacker_ratio),
            ));
        }
        positive("gt_update_interval_s", self.gt_update_interval_s)?;
        unit("revocation_threshold", self.revocation_threshold)?;
        positive("report_timeout_s", self.report_timeout_s)?;

        self.trust
            .validate()
            .map_err(|e| invalid("trust", e.to_string()))?;
        self.fusion
            .validate()
            .map_err(|e| invalid("fusion", e.to_string()))?;

        for (i, d) in self.admission.d_th_m.iter().enumerate() {
            positive(&format!("admission.d_th_m[{i}]"), *d)?;
        }
        positive(
            "admission.duration_scale_s_per_min",
            self.admission.duration_scale_s_per_min,
        )?;

        if self.events.n_events == 0 {
            return Err(invalid("events.n_events", "must be at least 1".to_string()));
        }
        if self.events.stagger_s < 0.0 {
            return Err(invalid(
                "events.stagger_s",
                "must be non-negative".to_string(),
            ));
        }
        ordered("events.reappear_gap_s", self.events.reappear_gap_s)?;
        if self.events.clearance_s < 0.0 {
            return Err(invalid(
                "events.clearance_s",
                "must be non-negative".to_string(),
            ));
        }

        ordered("mobility.speed_mps", self.mobility.speed_mps)?;
        positive("mobility.witness_radius_m", self.mobility.witness_radius_m)?;
        unit(
            "mobility.entry_window_fraction",
            self.mobility.entry_window_fraction,
        )?;
        positive(
            "mobility.rebroadcast_period_s",
            self.mobility.rebroadcast_period_s,
        )?;

        unit("attack.event_aware_share", self.attack.event_aware_share)?;
        for kind in [AttackKind::EventAware, AttackKind::LocationAware] {
            self.attack
                .profile(kind)
                .validate()
                .map_err(|m| invalid("attack", m))?;
        }
        Ok(())
    }
}
