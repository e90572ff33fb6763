//! The central authority: collects local trust reports, periodically turns them
//! into global trust, and maintains the revocation list.

use std::collections::{BTreeMap, BTreeSet};

use crate::config::{ScenarioConfig, Scheme};
use crate::dst::{self, MassFunction, WeightedEvidence};
use crate::local_trust::LocalTrustRecord;
use crate::VehicleId;

#[derive(Debug, Clone, PartialEq)]
pub struct AuthorityState {
    scheme: Scheme,
    /// Evidential global trust, used by [`Scheme::Ipek`].
    gt_table: BTreeMap<VehicleId, MassFunction>,
    /// Scalar global trust, used by [`Scheme::SymmetricBaseline`].
    baseline_gt: BTreeMap<VehicleId, f64>,
    revoked: BTreeSet<VehicleId>,
    pending: Vec<LocalTrustRecord>,
    last_update: f64,
}

/// What one global update did.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct UpdateOutcome {
    /// Vehicles revoked by this update, in id order.
    pub newly_revoked: Vec<VehicleId>,
    pub reports_used: usize,
    /// Expired, superseded, or from/about revoked vehicles.
    pub reports_discarded: usize,
}

const NEUTRAL_GT: f64 = 0.5;

impl AuthorityState {
    pub fn new(scheme: Scheme) -> Self {
        AuthorityState {
            scheme,
            gt_table: BTreeMap::new(),
            baseline_gt: BTreeMap::new(),
            revoked: BTreeSet::new(),
            pending: Vec::new(),
            last_update: 0.0,
        }
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// Queues a report. Reports from revoked vehicles are dropped.
    pub fn submit(&mut self, record: LocalTrustRecord) -> bool {
        if self.revoked.contains(&record.reporter) {
            return false;
        }
        self.pending.push(record);
        true
    }

    pub fn pending(&self) -> &[LocalTrustRecord] {
        &self.pending
    }

    pub fn is_revoked(&self, id: VehicleId) -> bool {
        self.revoked.contains(&id)
    }

    pub fn revoked(&self) -> &BTreeSet<VehicleId> {
        &self.revoked
    }

    pub fn last_update(&self) -> f64 {
        self.last_update
    }

    /// Stored mass for `id`; vacuous for a vehicle with no history.
    pub fn mass(&self, id: VehicleId) -> MassFunction {
        self.gt_table.get(&id).copied().unwrap_or_default()
    }

    pub fn gt_table(&self) -> &BTreeMap<VehicleId, MassFunction> {
        &self.gt_table
    }

    /// Scalar global trust under the active scheme.
    pub fn global_trust(&self, id: VehicleId) -> f64 {
        match self.scheme {
            Scheme::Ipek => self.mass(id).pignistic(),
            Scheme::SymmetricBaseline => self.baseline_gt.get(&id).copied().unwrap_or(NEUTRAL_GT),
        }
    }

    /// Runs the scheme's periodic update.
    pub fn update(&mut self, now: f64, cfg: &ScenarioConfig) -> UpdateOutcome {
        match self.scheme {
            Scheme::Ipek => global_update(self, now, cfg),
            Scheme::SymmetricBaseline => symmetric_baseline_update(self, now, cfg),
        }
    }

    /// Drops expired and revoked-reporter records, then keeps only the latest
    /// report per (reporter, target), grouped by target.
    fn drain_reports(
        &mut self,
        now: f64,
        timeout: f64,
    ) -> (BTreeMap<VehicleId, Vec<LocalTrustRecord>>, usize) {
        let pending = std::mem::take(&mut self.pending);
        let total = pending.len();
        let mut latest: BTreeMap<(VehicleId, VehicleId), LocalTrustRecord> = BTreeMap::new();
        for r in pending {
            if r.issued_at < now - timeout || self.revoked.contains(&r.reporter) {
                continue;
            }
            if self.revoked.contains(&r.target) || r.reporter == r.target {
                continue;
            }
            let key = (r.target, r.reporter);
            match latest.get(&key) {
                Some(held) if held.issued_at > r.issued_at => {}
                _ => {
                    latest.insert(key, r);
                }
            }
        }
        let expired = total - latest.len();
        let mut by_target: BTreeMap<VehicleId, Vec<LocalTrustRecord>> = BTreeMap::new();
        for ((target, _), r) in latest {
            by_target.entry(target).or_default().push(r);
        }
        (by_target, expired)
    }

    fn revoke_below(
        &mut self,
        threshold: f64,
        candidates: impl IntoIterator<Item = VehicleId>,
    ) -> Vec<VehicleId> {
        let mut newly = Vec::new();
        for id in candidates {
            if !self.revoked.contains(&id) && self.global_trust(id) < threshold {
                newly.push(id);
            }
        }
        newly.sort();
        self.revoked.extend(newly.iter().copied());
        newly
    }
}

/// Evidential update: for each reported target, weight each report by its
/// reporter's trust, fuse most-reliable-first, merge into history, then
/// accentuate risk if this round's evidence was risky enough.
///
/// Reporter trust is read from the table as it stood before this update, so
/// the result does not depend on the order targets are processed in.
pub fn global_update(auth: &mut AuthorityState, now: f64, cfg: &ScenarioConfig) -> UpdateOutcome {
    let (by_target, reports_discarded) = auth.drain_reports(now, cfg.report_timeout_s);
    let mut reports_used = 0;
    let mut updated = Vec::with_capacity(by_target.len());

    for (target, records) in &by_target {
        let evidence: Vec<WeightedEvidence> = records
            .iter()
            .map(|r| {
                let reporter_gt = auth.mass(r.reporter).pignistic();
                WeightedEvidence {
                    reporter: r.reporter,
                    reporter_gt,
                    mass: dst::mass_from_local_report(reporter_gt, r.lt)
                        .expect("trust values stay in [0, 1]"),
                }
            })
            .collect();
        reports_used += evidence.len();

        let current = dst::sequential_fuse(&evidence).expect("groups are non-empty");
        let history = auth.mass(*target);
        let merged = dst::merge_with_history(&history, &current);
        if history == MassFunction::vacuous() && !cfg.fusion.accentuate_first_evidence {
            updated.push((*target, merged));
            continue;
        }
        let accentuated = dst::accentuate_risk(&merged, current.risky(), &cfg.fusion)
            .expect("validated fusion config");
        updated.push((*target, accentuated));
    }

    auth.gt_table.extend(updated);
    auth.last_update = now;
    let candidates: Vec<VehicleId> = by_target.keys().copied().collect();
    UpdateOutcome {
        newly_revoked: auth.revoke_below(cfg.revocation_threshold, candidates),
        reports_used,
        reports_discarded,
    }
}

/// Comparator update: new trust is an even blend of the previous value and the
/// reporter-trust-weighted mean of this round's local trust values.
pub fn symmetric_baseline_update(
    auth: &mut AuthorityState,
    now: f64,
    cfg: &ScenarioConfig,
) -> UpdateOutcome {
    let (by_target, reports_discarded) = auth.drain_reports(now, cfg.report_timeout_s);
    let mut reports_used = 0;
    let mut updated = Vec::with_capacity(by_target.len());

    for (target, records) in &by_target {
        let (weighted, weight) = records.iter().fold((0.0, 0.0), |(sum, w), r| {
            let gt = auth.global_trust(r.reporter);
            (sum + gt * r.lt, w + gt)
        });
        reports_used += records.len();
        if weight > 0.0 {
            let prior = auth.global_trust(*target);
            updated.push((*target, 0.5 * prior + 0.5 * (weighted / weight)));
        }
    }

    auth.baseline_gt.extend(updated);
    auth.last_update = now;
    let candidates: Vec<VehicleId> = by_target.keys().copied().collect();
    UpdateOutcome {
        newly_revoked: auth.revoke_below(cfg.revocation_threshold, candidates),
        reports_used,
        reports_discarded,
    }
}
