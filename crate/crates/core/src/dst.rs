//! Evidence fusion over the two-hypothesis frame {trusted, risky}.
//!
//! A vehicle's global trust is held as a [`MassFunction`] rather than a scalar,
//! so that "no evidence yet" and "evenly split evidence" stay distinguishable.
//! Sources are combined with Yager's rule, which moves conflicting mass into the
//! uncertainty component instead of renormalising it away. Because Yager's rule
//! is not associative, [`sequential_fuse`] fixes the fold order: most reliable
//! reporter first.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_unit, TrustError};
use crate::VehicleId;

/// Absolute tolerance used when checking that the three masses sum to one.
pub const NORMALITY_TOLERANCE: f64 = 1e-9;

/// Basic belief assignment `(m_T, m_R, m_U)`.
///
/// Construction validates normality; every operation in this module only moves
/// mass between components, so no renormalisation is ever applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMass", into = "RawMass")]
pub struct MassFunction {
    trusted: f64,
    risky: f64,
    uncertain: f64,
}

#[derive(Serialize, Deserialize)]
struct RawMass {
    trusted: f64,
    risky: f64,
    uncertain: f64,
}

impl TryFrom<RawMass> for MassFunction {
    type Error = TrustError;

    fn try_from(raw: RawMass) -> Result<Self, Self::Error> {
        MassFunction::try_new(raw.trusted, raw.risky, raw.uncertain)
    }
}

impl From<MassFunction> for RawMass {
    fn from(m: MassFunction) -> Self {
        RawMass {
            trusted: m.trusted,
            risky: m.risky,
            uncertain: m.uncertain,
        }
    }
}

impl MassFunction {
    pub fn try_new(trusted: f64, risky: f64, uncertain: f64) -> Result<Self, TrustError> {
        check_unit("m_T", trusted)?;
        check_unit("m_R", risky)?;
        check_unit("m_U", uncertain)?;
        if ((trusted + risky + uncertain) - 1.0).abs() > NORMALITY_TOLERANCE {
            return Err(TrustError::NotNormalized {
                trusted,
                risky,
                uncertain,
            });
        }
        Ok(MassFunction {
            trusted,
            risky,
            uncertain,
        })
    }

    /// Internal constructor for results of mass-conserving arithmetic.
    fn from_parts(trusted: f64, risky: f64, uncertain: f64) -> Self {
        let m = MassFunction {
            trusted,
            risky,
            uncertain,
        };
        debug_assert!(m.is_normalized(), "normality violated: {m:?}");
        m
    }

    /// Complete ignorance: all mass on the uncertainty set.
    pub const fn vacuous() -> Self {
        MassFunction {
            trusted: 0.0,
            risky: 0.0,
            uncertain: 1.0,
        }
    }

    pub fn trusted(&self) -> f64 {
        self.trusted
    }

    pub fn risky(&self) -> f64 {
        self.risky
    }

    pub fn uncertain(&self) -> f64 {
        self.uncertain
    }

    pub fn total(&self) -> f64 {
        self.trusted + self.risky + self.uncertain
    }

    pub fn is_normalized(&self) -> bool {
        let in_range = |x: f64| (-NORMALITY_TOLERANCE..=1.0 + NORMALITY_TOLERANCE).contains(&x);
        in_range(self.trusted)
            && in_range(self.risky)
            && in_range(self.uncertain)
            && (self.total() - 1.0).abs() <= NORMALITY_TOLERANCE
    }

    /// Scalar trust with the uncertainty split evenly between the hypotheses.
    pub fn pignistic(&self) -> f64 {
        pignistic(self)
    }
}

impl Default for MassFunction {
    fn default() -> Self {
        MassFunction::vacuous()
    }
}

impl fmt::Display for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(T={:.6}, R={:.6}, U={:.6})",
            self.trusted, self.risky, self.uncertain
        )
    }
}

/// Tuning for the post-merge risk accentuation step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FusionConfig {
    /// Risky mass in the incoming evidence above which accentuation fires.
    pub tau: f64,
    /// Largest fraction of the trusted mass one accentuation step may drain.
    pub trusted_drain_cap: f64,
    /// Whether accentuation also applies to a vehicle's first evidence, when
    /// its stored history is still vacuous.
    pub accentuate_first_evidence: bool,
}

impl Default for FusionConfig {
    fn default() -> Self {
        FusionConfig {
            tau: 0.3,
            trusted_drain_cap: 0.5,
            accentuate_first_evidence: true,
        }
    }
}

impl FusionConfig {
    pub fn validate(&self) -> Result<(), TrustError> {
        check_unit("tau", self.tau)?;
        check_unit("trusted_drain_cap", self.trusted_drain_cap)?;
        Ok(())
    }
}

/// Converts one local-trust report into evidence, discounted by the reporter's
/// own global trust: a reporter at `gt = 0` contributes pure uncertainty.
pub fn mass_from_local_report(reporter_gt: f64, lt: f64) -> Result<MassFunction, TrustError> {
    check_unit("reporter_gt", reporter_gt)?;
    check_unit("lt", lt)?;
    Ok(MassFunction::from_parts(
        reporter_gt * lt,
        reporter_gt * (1.0 - lt),
        1.0 - reporter_gt,
    ))
}

/// Outcome of a single Yager combination, with the conflict mass exposed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Combination {
    pub mass: MassFunction,
    pub conflict: f64,
}

/// Yager's rule, also returning the conflict `K` that was moved to uncertainty.
pub fn yager_combine_with_conflict(a: &MassFunction, b: &MassFunction) -> Combination {
    let trusted = a.trusted * b.trusted + a.trusted * b.uncertain + a.uncertain * b.trusted;
    let risky = a.risky * b.risky + a.risky * b.uncertain + a.uncertain * b.risky;
    let conflict = a.trusted * b.risky + a.risky * b.trusted;
    let uncertain = a.uncertain * b.uncertain + conflict;
    Combination {
        mass: MassFunction::from_parts(trusted, risky, uncertain),
        conflict,
    }
}

pub fn yager_combine(a: &MassFunction, b: &MassFunction) -> MassFunction {
    yager_combine_with_conflict(a, b).mass
}

/// One reporter's evidence about a target, as handed to [`sequential_fuse`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedEvidence {
    pub reporter: VehicleId,
    pub reporter_gt: f64,
    pub mass: MassFunction,
}

/// Orders evidence by descending reporter trust, ties broken by ascending id.
pub fn reliability_order(a: &WeightedEvidence, b: &WeightedEvidence) -> Ordering {
    b.reporter_gt
        .total_cmp(&a.reporter_gt)
        .then_with(|| a.reporter.cmp(&b.reporter))
}

/// Folds the reports with Yager's rule, starting from the most trusted reporter.
pub fn sequential_fuse(reports: &[WeightedEvidence]) -> Result<MassFunction, TrustError> {
    let mut ordered = reports.to_vec();
    ordered.sort_by(reliability_order);
    let (first, rest) = ordered.split_first().ok_or(TrustError::EmptyReports)?;
    Ok(rest
        .iter()
        .fold(first.mass, |acc, e| yager_combine(&acc, &e.mass)))
}

/// Combines a vehicle's stored mass with the evidence gathered this round.
pub fn merge_with_history(old: &MassFunction, current: &MassFunction) -> MassFunction {
    yager_combine(old, current)
}

/// Shifts mass toward `risky` when the incoming risk exceeds `tau`.
///
/// The shortfall `current_risk - tau` is taken from uncertainty first; whatever
/// uncertainty cannot cover is taken from the trusted mass, capped at
/// `trusted_drain_cap` of it.
pub fn accentuate_risk(
    merged: &MassFunction,
    current_risk: f64,
    cfg: &FusionConfig,
) -> Result<MassFunction, TrustError> {
    check_unit("current_risk", current_risk)?;
    cfg.validate()?;
    if current_risk <= cfg.tau {
        return Ok(*merged);
    }
    let delta = current_risk - cfg.tau;

    let from_uncertain = merged.uncertain.min(delta);
    let mut risky = merged.risky + from_uncertain;
    let uncertain = merged.uncertain - from_uncertain;
    let mut trusted = merged.trusted;

    if from_uncertain < delta {
        let from_trusted = (trusted * cfg.trusted_drain_cap).min(delta - from_uncertain);
        risky += from_trusted;
        trusted -= from_trusted;
    }
    Ok(MassFunction::from_parts(trusted, risky, uncertain))
}

/// Betting probability of "trusted": `m_T + m_U / 2`.
pub fn pignistic(m: &MassFunction) -> f64 {
    m.trusted + m.uncertain / 2.0
}
