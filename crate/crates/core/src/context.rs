//! Traffic events, event messages, and the receive-side admission pipeline.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config::ScenarioConfig;
use crate::error::TrustError;
use crate::VehicleId;

/// Binary event status carried in messages: 0 passive, 1 active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum EventState {
    Passive,
    Active,
}

impl EventState {
    pub fn negate(self) -> Self {
        match self {
            EventState::Passive => EventState::Active,
            EventState::Active => EventState::Passive,
        }
    }
}

impl From<EventState> for u8 {
    fn from(s: EventState) -> u8 {
        match s {
            EventState::Passive => 0,
            EventState::Active => 1,
        }
    }
}

impl TryFrom<u8> for EventState {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            0 => Ok(EventState::Passive),
            1 => Ok(EventState::Active),
            other => Err(format!("event state must be 0 or 1, got {other}")),
        }
    }
}

/// Severity band and nominal duration of each of the four event/location types.
#[derive(Debug, Clone, Copy)]
struct ClassSpec {
    severity: (f64, f64),
    duration_minutes: (f64, f64),
}

// Type 4 is open-ended ("more than four hours"); capped at eight.
const CLASSES: [ClassSpec; 4] = [
    ClassSpec {
        severity: (0.1, 0.3),
        duration_minutes: (5.0, 15.0),
    },
    ClassSpec {
        severity: (0.4, 0.6),
        duration_minutes: (15.0, 60.0),
    },
    ClassSpec {
        severity: (0.7, 0.9),
        duration_minutes: (60.0, 240.0),
    },
    ClassSpec {
        severity: (1.0, 1.0),
        duration_minutes: (240.0, 480.0),
    },
];

fn class_spec(class: u8) -> Result<&'static ClassSpec, TrustError> {
    match class {
        1..=4 => Ok(&CLASSES[usize::from(class - 1)]),
        other => Err(TrustError::InvalidSeverityClass(other)),
    }
}

/// Inclusive severity band of a type.
pub fn severity_band(class: u8) -> Result<(f64, f64), TrustError> {
    class_spec(class).map(|c| c.severity)
}

/// Upper bound of a type's duration, in minutes.
pub fn max_duration_minutes(class: u8) -> Result<f64, TrustError> {
    class_spec(class).map(|c| c.duration_minutes.1)
}

/// Draws a severity uniformly from the type's band. Type 4 is always 1.0.
pub fn severity_for<R: Rng + ?Sized>(class: u8, rng: &mut R) -> Result<f64, TrustError> {
    let (lo, hi) = severity_band(class)?;
    if lo == hi {
        return Ok(lo);
    }
    Ok(rng.gen_range(lo..=hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// One appearance of an event: active on `[start, end)`, then passive at the
/// same spot until `clear_until`, after which it is gone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Occurrence {
    pub start: f64,
    pub end: f64,
    pub clear_until: f64,
    pub position: Point,
}

/// Which row of the cyclic schedule an event id falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventCategory {
    /// Both event and location non-critical.
    Routine,
    /// Exactly one of event or location critical.
    Mixed,
    /// Both critical.
    Critical,
}

impl EventCategory {
    /// First quarter of ids routine, middle half mixed, last quarter critical.
    pub fn for_id(event_id: u32, n_events: u32) -> Self {
        let q = u64::from(n_events);
        let i = u64::from(event_id) * 4;
        if i < q {
            EventCategory::Routine
        } else if i < 3 * q {
            EventCategory::Mixed
        } else {
            EventCategory::Critical
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub event_id: u32,
    pub event_type: u8,
    pub location_type: u8,
    /// Ground-truth event severity, shared by every occurrence.
    pub s_e: f64,
    /// Ground-truth location severity, shared by every occurrence.
    pub s_l: f64,
    pub occurrences: Vec<Occurrence>,
}

impl Event {
    pub fn occurrence_at(&self, t: f64) -> Option<&Occurrence> {
        self.occurrences
            .iter()
            .find(|o| o.start <= t && t < o.clear_until)
    }

    /// Observable state at `t`, or `None` when the event is not present.
    pub fn state_at(&self, t: f64) -> Option<EventState> {
        self.occurrence_at(t).map(|o| {
            if t < o.end {
                EventState::Active
            } else {
                EventState::Passive
            }
        })
    }

    /// State that a witness at `t` would vouch for; absent events count as passive.
    pub fn truth_at(&self, t: f64) -> EventState {
        self.state_at(t).unwrap_or(EventState::Passive)
    }

    pub fn category(&self) -> EventCategory {
        let critical = |c: u8| c >= 3;
        match (critical(self.event_type), critical(self.location_type)) {
            (false, false) => EventCategory::Routine,
            (true, true) => EventCategory::Critical,
            _ => EventCategory::Mixed,
        }
    }
}

fn draw_types<R: Rng + ?Sized>(category: EventCategory, rng: &mut R) -> (u8, u8) {
    let low = |rng: &mut R| rng.gen_range(1..=2u8);
    let high = |rng: &mut R| rng.gen_range(3..=4u8);
    match category {
        EventCategory::Routine => (low(rng), low(rng)),
        EventCategory::Critical => (high(rng), high(rng)),
        EventCategory::Mixed => {
            if rng.gen_bool(0.5) {
                (high(rng), low(rng))
            } else {
                (low(rng), high(rng))
            }
        }
    }
}

fn random_point<R: Rng + ?Sized>(grid: f64, rng: &mut R) -> Point {
    Point::new(rng.gen_range(0.0..grid), rng.gen_range(0.0..grid))
}

/// Builds the cyclic event schedule.
///
/// Events first appear in id order, one per slot of the stagger period, so the
/// routine ones come first. Each event then reappears with the same types and
/// severities at a fresh position after a random gap, until the run ends.
pub fn build_schedule<R: Rng + ?Sized>(cfg: &ScenarioConfig, rng: &mut R) -> Vec<Event> {
    let ev = &cfg.events;
    let slot = ev.stagger_s / f64::from(ev.n_events.max(1));
    (0..ev.n_events)
        .map(|event_id| {
            let category = EventCategory::for_id(event_id, ev.n_events);
            let (event_type, location_type) = draw_types(category, rng);
            let s_e = severity_for(event_type, rng).expect("drawn type is valid");
            let s_l = severity_for(location_type, rng).expect("drawn type is valid");
            let (dmin, dmax) = CLASSES[usize::from(event_type - 1)].duration_minutes;

            let mut occurrences = Vec::new();
            let mut start = f64::from(event_id) * slot + rng.gen_range(0.0..=slot);
            while start < cfg.sim_duration_s {
                let active = rng.gen_range(dmin..=dmax) * cfg.admission.duration_scale_s_per_min;
                let end = start + active;
                let clear_until = end + ev.clearance_s;
                occurrences.push(Occurrence {
                    start,
                    end,
                    clear_until,
                    position: random_point(cfg.grid_size_m, rng),
                });
                start = clear_until + rng.gen_range(ev.reappear_gap_s.0..=ev.reappear_gap_s.1);
            }
            Event {
                event_id,
                event_type,
                location_type,
                s_e,
                s_l,
                occurrences,
            }
        })
        .collect()
}

/// Broadcast announcement of an event's status.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EventMessage {
    pub sender: VehicleId,
    pub event_id: u32,
    pub event_type: u8,
    pub location_type: u8,
    pub position: Point,
    pub status: EventState,
    pub sent_at: f64,
}

/// Ignore distance and staleness limit for one event type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmissionThresholds {
    pub d_th: f64,
    pub t_th: f64,
}

/// Per-type admission settings; thresholds are derived from these.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AdmissionConfig {
    /// Ignore radius in metres for event types 1..=4.
    pub d_th_m: [f64; 4],
    /// Simulation seconds per minute of nominal event duration.
    pub duration_scale_s_per_min: f64,
}

impl Default for AdmissionConfig {
    fn default() -> Self {
        AdmissionConfig {
            d_th_m: [500.0, 1000.0, 1500.0, 2000.0],
            duration_scale_s_per_min: 1.0,
        }
    }
}

impl AdmissionConfig {
    /// `t_th` is twice the type's longest duration, scaled to simulation time.
    pub fn thresholds_for(&self, event_type: u8) -> Result<AdmissionThresholds, TrustError> {
        let minutes = max_duration_minutes(event_type)?;
        Ok(AdmissionThresholds {
            d_th: self.d_th_m[usize::from(event_type - 1)],
            t_th: 2.0 * minutes * self.duration_scale_s_per_min,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    Revoked,
    TooFar,
    Stale,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admission {
    Admit,
    Reject(RejectReason),
}

/// Receive-side checks, in order: revoked sender, distance to the event, age.
pub fn admit_message(
    msg: &EventMessage,
    receiver_pos: &Point,
    now: f64,
    revoked: &BTreeSet<VehicleId>,
    thresholds: &AdmissionThresholds,
) -> Admission {
    if revoked.contains(&msg.sender) {
        Admission::Reject(RejectReason::Revoked)
    } else if receiver_pos.distance(&msg.position) > thresholds.d_th {
        Admission::Reject(RejectReason::TooFar)
    } else if now - msg.sent_at > thresholds.t_th {
        Admission::Reject(RejectReason::Stale)
    } else {
        Admission::Admit
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StoredMessage {
    pub msg: EventMessage,
    /// Set once the holder has scored the sender for this message.
    pub evaluated: bool,
}

/// Per-vehicle record of admitted messages: the latest one per (sender, event).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MessageStore {
    entries: BTreeMap<(VehicleId, u32), StoredMessage>,
}

impl MessageStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `msg` unless a newer one from the same sender about the same
    /// event is held. Returns whether the store changed.
    pub fn record(&mut self, msg: EventMessage) -> bool {
        let key = (msg.sender, msg.event_id);
        match self.entries.get(&key) {
            Some(held) if held.msg == msg || held.msg.sent_at > msg.sent_at => false,
            _ => {
                self.entries.insert(
                    key,
                    StoredMessage {
                        msg,
                        evaluated: false,
                    },
                );
                true
            }
        }
    }

    pub fn get(&self, sender: VehicleId, event_id: u32) -> Option<&StoredMessage> {
        self.entries.get(&(sender, event_id))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &StoredMessage> {
        self.entries.values()
    }

    /// Messages about `event_id` sent at or after `since` and not yet scored,
    /// marking them as scored.
    pub fn take_unevaluated_since(&mut self, event_id: u32, since: f64) -> Vec<EventMessage> {
        self.entries
            .values_mut()
            .filter(|s| s.msg.event_id == event_id && !s.evaluated && s.msg.sent_at >= since)
            .map(|s| {
                s.evaluated = true;
                s.msg
            })
            .collect()
    }

    /// Drops messages older than their type's staleness limit.
    pub fn prune<F>(&mut self, now: f64, t_th: F)
    where
        F: Fn(&EventMessage) -> f64,
    {
        self.entries
            .retain(|_, s| now - s.msg.sent_at <= t_th(&s.msg));
    }

    pub fn forget_sender(&mut self, sender: VehicleId) {
        self.entries.retain(|(s, _), _| *s != sender);
    }
}
