//! Deterministic discrete-time simulation of vehicles, events, and the
//! central authority.
//!
//! Each step advances the clock, moves vehicles, lets witnesses broadcast
//! event messages, delivers them through the admission checks, lets witnesses
//! score the senders of stored messages, and, every update interval, runs the
//! authority's global trust update and takes a metrics snapshot.
//!
//! The loop is single-threaded. All randomness comes from seeded ChaCha
//! streams, and all maps are ordered, so a (config, seed) pair fully
//! determines the trace.

pub mod authority;
pub mod mobility;

use std::collections::BTreeMap;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::adversary::{self, AttackKind, AttackerProfile};
use crate::config::{ScenarioConfig, Scheme};
use crate::context::{
    self, admit_message, Admission, AdmissionThresholds, Event, EventMessage, EventState,
    MessageStore, Point, RejectReason,
};
use crate::dst::MassFunction;
use crate::error::ConfigError;
use crate::local_trust::{self, LocalTrustRecord};
use crate::metrics::{self, ConfusionMatrix, Snapshot};
use crate::VehicleId;

pub use authority::{global_update, symmetric_baseline_update, AuthorityState, UpdateOutcome};
use mobility::Waypoint;

const STREAM_SCHEDULE: u64 = 1;
const STREAM_POPULATION: u64 = 2;
const STREAM_MOBILITY: u64 = 3;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone)]
pub struct VehicleState {
    pub id: VehicleId,
    pub motion: Waypoint,
    pub is_attacker: bool,
    pub profile: Option<AttackerProfile>,
    pub em_store: MessageStore,
    /// This vehicle's local trust in other vehicles.
    pub lt_table: BTreeMap<VehicleId, f64>,
    pub entered_at: f64,
    /// Last status broadcast per event, with its send time.
    last_broadcast: BTreeMap<u32, (EventState, f64)>,
}

impl VehicleState {
    pub fn position(&self) -> Point {
        self.motion.position
    }

    pub fn velocity(&self) -> Point {
        self.motion.velocity()
    }

    pub fn is_present(&self, now: f64) -> bool {
        self.entered_at <= now
    }

    /// Status this vehicle announces for an event whose true state is `truth`.
    pub fn report_for(&self, event: &Event, truth: EventState) -> EventState {
        match &self.profile {
            Some(p) => adversary::decide_report(p, event, truth),
            None => truth,
        }
    }
}

/// Counters accumulated over a run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunStats {
    pub messages_sent: u64,
    pub false_messages_sent: u64,
    pub messages_admitted: u64,
    pub rejected_revoked: u64,
    pub rejected_too_far: u64,
    pub rejected_stale: u64,
    pub reports_submitted: u64,
    pub gt_updates: u64,
}

/// Everything that happened during one step, for inspection by callers.
#[derive(Debug, Clone, Default)]
pub struct StepReport {
    pub messages: Vec<EventMessage>,
    pub records: Vec<LocalTrustRecord>,
    pub update: Option<UpdateOutcome>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Revocation {
    pub vehicle: VehicleId,
    pub time_s: f64,
    pub is_attacker: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VehicleSummary {
    pub id: VehicleId,
    pub is_attacker: bool,
    pub attack_kind: Option<AttackKind>,
    pub entered_at: f64,
    pub global_trust: f64,
    /// Stored evidential trust; present only under the evidential scheme.
    pub mass: Option<MassFunction>,
    pub revoked_at: Option<f64>,
}

/// Full record of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationTrace {
    pub scheme: Scheme,
    pub seed: u64,
    pub attacker_ratio: f64,
    pub series: Vec<Snapshot>,
    pub final_cm: ConfusionMatrix,
    pub vehicles: Vec<VehicleSummary>,
    pub revocations: Vec<Revocation>,
    pub events: Vec<Event>,
    pub stats: RunStats,
}

impl SimulationTrace {
    pub fn final_scores(&self) -> metrics::Scores {
        self.final_cm.scores()
    }
}

pub struct World {
    cfg: ScenarioConfig,
    tick: u64,
    vehicles: Vec<VehicleState>,
    events: Vec<Event>,
    thresholds: [AdmissionThresholds; 4],
    authority: AuthorityState,
    mobility_rng: ChaCha8Rng,
    next_update: f64,
    series: Vec<Snapshot>,
    revocations: Vec<Revocation>,
    stats: RunStats,
}

impl World {
    /// Builds a world with a freshly generated event schedule.
    pub fn new(cfg: &ScenarioConfig) -> Result<Self, ConfigError> {
        cfg.validate()?;
        let events = context::build_schedule(cfg, &mut rng_for(cfg.seed, STREAM_SCHEDULE));
        Self::with_schedule(cfg, events)
    }

    /// Builds a world around a given schedule, e.g. one loaded for replay.
    pub fn with_schedule(cfg: &ScenarioConfig, events: Vec<Event>) -> Result<Self, ConfigError> {
        cfg.validate()?;
        for e in &events {
            for class in [e.event_type, e.location_type] {
                if !(1..=4).contains(&class) {
                    return Err(ConfigError::invalid(
                        format!("schedule[{}]", e.event_id),
                        format!("type {class} is not one of 1..=4"),
                    ));
                }
            }
        }
        let thresholds = [1u8, 2, 3, 4].map(|t| {
            cfg.admission
                .thresholds_for(t)
                .expect("types 1..=4 are valid")
        });
        Ok(World {
            vehicles: spawn_population(cfg),
            events,
            thresholds,
            authority: AuthorityState::new(cfg.scheme),
            mobility_rng: rng_for(cfg.seed, STREAM_MOBILITY),
            next_update: cfg.gt_update_interval_s,
            series: Vec::new(),
            revocations: Vec::new(),
            stats: RunStats::default(),
            tick: 0,
            cfg: cfg.clone(),
        })
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.cfg
    }

    pub fn now(&self) -> f64 {
        self.tick as f64 * self.cfg.step_s
    }

    pub fn vehicles(&self) -> &[VehicleState] {
        &self.vehicles
    }

    pub fn vehicles_mut(&mut self) -> &mut [VehicleState] {
        &mut self.vehicles
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn authority(&self) -> &AuthorityState {
        &self.authority
    }

    pub fn series(&self) -> &[Snapshot] {
        &self.series
    }

    pub fn stats(&self) -> &RunStats {
        &self.stats
    }

    fn thresholds(&self, event_type: u8) -> &AdmissionThresholds {
        &self.thresholds[usize::from(event_type - 1)]
    }

    /// Events `vehicle` currently observes, with their true state.
    pub fn witnessed(&self, vehicle: &VehicleState) -> Vec<(usize, EventState)> {
        let now = self.now();
        let radius = self.cfg.mobility.witness_radius_m;
        let pos = vehicle.position();
        self.events
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                let occ = e.occurrence_at(now)?;
                (occ.position.distance(&pos) <= radius).then(|| (i, e.state_at(now).unwrap()))
            })
            .collect()
    }

    /// Messages the vehicle at `idx` broadcasts this step. Honest vehicles
    /// report what they see; attackers apply their strategy.
    pub fn witness_and_broadcast(&mut self, idx: usize) -> Vec<EventMessage> {
        let now = self.now();
        let period = self.cfg.mobility.rebroadcast_period_s;
        let seen = self.witnessed(&self.vehicles[idx]);
        let mut out = Vec::new();
        for (ei, truth) in seen {
            let event = &self.events[ei];
            let vehicle = &self.vehicles[idx];
            let status = vehicle.report_for(event, truth);
            let due = match vehicle.last_broadcast.get(&event.event_id) {
                None => true,
                Some(&(last_status, last_at)) => {
                    last_status != status || now - last_at >= period - 1e-9
                }
            };
            if !due {
                continue;
            }
            let occ = event
                .occurrence_at(now)
                .expect("witnessed events are present");
            out.push(EventMessage {
                sender: vehicle.id,
                event_id: event.event_id,
                event_type: event.event_type,
                location_type: event.location_type,
                position: occ.position,
                status,
                sent_at: now,
            });
            if status != truth {
                self.stats.false_messages_sent += 1;
            }
            self.vehicles[idx]
                .last_broadcast
                .insert(event.event_id, (status, now));
        }
        out
    }

    fn deliver(&mut self, messages: &[EventMessage]) {
        let now = self.now();
        for msg in messages {
            let thr = *self.thresholds(msg.event_type);
            for v in self.vehicles.iter_mut() {
                if v.id == msg.sender || !v.is_present(now) {
                    continue;
                }
                match admit_message(msg, &v.position(), now, self.authority.revoked(), &thr) {
                    Admission::Admit => {
                        self.stats.messages_admitted += 1;
                        v.em_store.record(*msg);
                    }
                    Admission::Reject(RejectReason::Revoked) => self.stats.rejected_revoked += 1,
                    Admission::Reject(RejectReason::TooFar) => self.stats.rejected_too_far += 1,
                    Admission::Reject(RejectReason::Stale) => self.stats.rejected_stale += 1,
                }
            }
        }
    }

    /// Scores the senders of newly stored messages about events the vehicle at
    /// `idx` is witnessing, and returns the resulting reports for the authority.
    ///
    /// Only messages sent during the occurrence being witnessed are scored,
    /// each exactly once, against the event's true state at the send time.
    pub fn evaluate_and_report(&mut self, idx: usize) -> Vec<LocalTrustRecord> {
        let now = self.now();
        let params = self.cfg.trust;
        let seen = self.witnessed(&self.vehicles[idx]);
        let attackers: Vec<bool> = self.vehicles.iter().map(|v| v.is_attacker).collect();
        let mut records = Vec::new();

        for (ei, _) in seen {
            let event = &self.events[ei];
            let occ_start = event.occurrence_at(now).expect("witnessed").start;
            let vehicle = &mut self.vehicles[idx];
            let fresh: Vec<EventMessage> = vehicle
                .em_store
                .take_unevaluated_since(event.event_id, occ_start);
            for msg in fresh {
                let lt = match &vehicle.profile {
                    Some(p) => adversary::distort_feedback(p, attackers[msg.sender.0 as usize]),
                    None => {
                        let lt_old = vehicle
                            .lt_table
                            .get(&msg.sender)
                            .copied()
                            .unwrap_or(params.t_neutral);
                        local_trust::evaluate_report(
                            msg.status,
                            event.truth_at(msg.sent_at),
                            lt_old,
                            event.s_e,
                            event.s_l,
                            &params,
                        )
                        .expect("severities and trust stay in range")
                    }
                };
                vehicle.lt_table.insert(msg.sender, lt);
                records.push(LocalTrustRecord {
                    reporter: vehicle.id,
                    target: msg.sender,
                    lt,
                    event_id: event.event_id,
                    issued_at: now,
                });
            }
        }
        records
    }

    /// Classifies every vehicle present at the current time.
    pub fn snapshot(&self) -> ConfusionMatrix {
        let now = self.now();
        metrics::classify(
            self.vehicles
                .iter()
                .filter(|v| v.is_present(now))
                .map(|v| (v.is_attacker, self.authority.is_revoked(v.id))),
        )
    }

    fn prune_stores(&mut self) {
        let now = self.now();
        let thresholds = self.thresholds;
        for v in self.vehicles.iter_mut() {
            v.em_store
                .prune(now, |m| thresholds[usize::from(m.event_type - 1)].t_th);
        }
    }

    fn move_vehicles(&mut self, dt: f64) {
        let now = self.now();
        let grid = self.cfg.grid_size_m;
        let speed = self.cfg.mobility.speed_mps;
        for v in self.vehicles.iter_mut() {
            // Vehicles start moving on the step after they enter.
            if v.entered_at < now {
                v.motion.advance(dt, grid, speed, &mut self.mobility_rng);
            }
        }
    }

    fn active_indices(&self) -> Vec<usize> {
        let now = self.now();
        self.vehicles
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_present(now) && !self.authority.is_revoked(v.id))
            .map(|(i, _)| i)
            .collect()
    }

    /// Advances the world by one configured step.
    pub fn step(&mut self) -> StepReport {
        let dt = self.cfg.step_s;
        self.tick += 1;
        self.move_vehicles(dt);

        let active = self.active_indices();
        let mut messages = Vec::new();
        for &i in &active {
            messages.extend(self.witness_and_broadcast(i));
        }
        self.stats.messages_sent += messages.len() as u64;
        self.deliver(&messages);
        self.prune_stores();

        let mut records = Vec::new();
        for &i in &active {
            records.extend(self.evaluate_and_report(i));
        }
        for r in &records {
            if self.authority.submit(*r) {
                self.stats.reports_submitted += 1;
            }
        }

        let now = self.now();
        let mut update = None;
        if now + 1e-9 >= self.next_update {
            let outcome = self.authority.update(now, &self.cfg);
            self.stats.gt_updates += 1;
            for &id in &outcome.newly_revoked {
                let is_attacker = self.vehicles[id.0 as usize].is_attacker;
                self.revocations.push(Revocation {
                    vehicle: id,
                    time_s: now,
                    is_attacker,
                });
                for v in self.vehicles.iter_mut() {
                    v.em_store.forget_sender(id);
                }
            }
            self.series.push(Snapshot {
                time_s: now,
                cm: self.snapshot(),
            });
            self.next_update += self.cfg.gt_update_interval_s;
            update = Some(outcome);
        }

        StepReport {
            messages,
            records,
            update,
        }
    }

    pub fn is_finished(&self) -> bool {
        self.now() + 1e-9 >= self.cfg.sim_duration_s
    }

    pub fn into_trace(self) -> SimulationTrace {
        let revoked_at: BTreeMap<VehicleId, f64> = self
            .revocations
            .iter()
            .map(|r| (r.vehicle, r.time_s))
            .collect();
        let vehicles = self
            .vehicles
            .iter()
            .map(|v| VehicleSummary {
                id: v.id,
                is_attacker: v.is_attacker,
                attack_kind: v.profile.map(|p| p.kind),
                entered_at: v.entered_at,
                global_trust: self.authority.global_trust(v.id),
                mass: (self.cfg.scheme == Scheme::Ipek).then(|| self.authority.mass(v.id)),
                revoked_at: revoked_at.get(&v.id).copied(),
            })
            .collect();
        let final_cm = self.snapshot();
        SimulationTrace {
            scheme: self.cfg.scheme,
            seed: self.cfg.seed,
            attacker_ratio: self.cfg.attacker_ratio,
            series: self.series,
            final_cm,
            vehicles,
            revocations: self.revocations,
            events: self.events,
            stats: self.stats,
        }
    }
}

fn spawn_population(cfg: &ScenarioConfig) -> Vec<VehicleState> {
    let mut rng = rng_for(cfg.seed, STREAM_POPULATION);
    let n = cfg.n_vehicles as usize;
    let n_attackers = (cfg.n_attackers() as usize).min(n);
    let n_event_aware = (n_attackers as f64 * cfg.attack.event_aware_share).round() as usize;

    let mut kinds: Vec<Option<AttackKind>> = vec![None; n];
    for (k, id) in index::sample(&mut rng, n, n_attackers)
        .into_iter()
        .enumerate()
    {
        kinds[id] = Some(if k < n_event_aware {
            AttackKind::EventAware
        } else {
            AttackKind::LocationAware
        });
    }

    let grid = cfg.grid_size_m;
    let entry_window = cfg.mobility.entry_window_fraction * cfg.sim_duration_s;
    kinds
        .into_iter()
        .enumerate()
        .map(|(i, kind)| {
            let entered_at = if entry_window > 0.0 {
                rng.gen_range(0.0..entry_window)
            } else {
                0.0
            };
            let position = Point::new(rng.gen_range(0.0..grid), rng.gen_range(0.0..grid));
            let target = Point::new(rng.gen_range(0.0..grid), rng.gen_range(0.0..grid));
            let speed = mobility::draw_speed(cfg.mobility.speed_mps, &mut rng);
            VehicleState {
                id: VehicleId(i as u32),
                motion: Waypoint::new(position, target, speed),
                is_attacker: kind.is_some(),
                profile: kind.map(|k| cfg.attack.profile(k)),
                em_store: MessageStore::new(),
                lt_table: BTreeMap::new(),
                entered_at,
                last_broadcast: BTreeMap::new(),
            }
        })
        .collect()
}

/// Runs a scenario to completion, replaying `cfg.schedule_file` if one is set.
pub fn run(cfg: &ScenarioConfig) -> Result<SimulationTrace, ConfigError> {
    match &cfg.schedule_file {
        Some(path) => {
            let events = crate::output::load_schedule(std::path::Path::new(path))?;
            run_with_schedule(cfg, events)
        }
        None => Ok(run_world(World::new(cfg)?)),
    }
}

/// Runs a scenario over a fixed event schedule.
pub fn run_with_schedule(
    cfg: &ScenarioConfig,
    events: Vec<Event>,
) -> Result<SimulationTrace, ConfigError> {
    Ok(run_world(World::with_schedule(cfg, events)?))
}

fn run_world(mut world: World) -> SimulationTrace {
    while !world.is_finished() {
        world.step();
    }
    world.into_trace()
}
