//! Context-aware on-off attackers.
//!
//! An attacker reports honestly while the severity it watches is below its
//! threshold, building trust on minor events, and inverts the event status once
//! the threshold is reached. Independently of that, every attacker bad-mouths
//! honest vehicles and praises fellow attackers in its local trust reports.

use serde::{Deserialize, Serialize};

use crate::context::{Event, EventState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackKind {
    /// Triggers on event severity.
    EventAware,
    /// Triggers on location severity.
    LocationAware,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttackerProfile {
    pub kind: AttackKind,
    pub theta: f64,
    /// Local trust an attacker reports for honest vehicles.
    pub collusion_low: f64,
    /// Local trust an attacker reports for fellow attackers.
    pub collusion_high: f64,
}

impl AttackerProfile {
    pub fn new(kind: AttackKind, theta: f64, collusion_low: f64, collusion_high: f64) -> Self {
        AttackerProfile {
            kind,
            theta,
            collusion_low,
            collusion_high,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(0.0..=1.0).contains(&self.theta) {
            return Err(format!("theta must lie in [0, 1], got {}", self.theta));
        }
        if !(0.0..=1.0).contains(&self.collusion_low) || !(0.0..=1.0).contains(&self.collusion_high)
        {
            return Err("collusion values must lie in [0, 1]".into());
        }
        if self.collusion_low >= self.collusion_high {
            return Err(format!(
                "collusion_low ({}) must be below collusion_high ({})",
                self.collusion_low, self.collusion_high
            ));
        }
        Ok(())
    }

    /// The severity this attacker conditions on.
    pub fn watched_severity(&self, event: &Event) -> f64 {
        match self.kind {
            AttackKind::EventAware => event.s_e,
            AttackKind::LocationAware => event.s_l,
        }
    }

    /// Whether the attacker lies about `event`. The boundary is inclusive.
    pub fn is_triggered(&self, event: &Event) -> bool {
        self.watched_severity(event) >= self.theta
    }
}

/// Status the attacker broadcasts for a witnessed event in state `truth`.
pub fn decide_report(profile: &AttackerProfile, event: &Event, truth: EventState) -> EventState {
    if profile.is_triggered(event) {
        truth.negate()
    } else {
        truth
    }
}

/// Local trust the attacker reports, bypassing the honest scoring rules.
pub fn distort_feedback(profile: &AttackerProfile, target_is_attacker: bool) -> f64 {
    if target_is_attacker {
        profile.collusion_high
    } else {
        profile.collusion_low
    }
}
