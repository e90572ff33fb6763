//! Vehicle-side local trust: a severity-scaled penalty for false reports and an
//! asymptotic, severity-weighted reward for honest ones.
//!
//! The two paths are deliberately asymmetric. A penalty is anchored at the
//! neutral trust `T_N`, so accumulated trust does not soften it; a reward only
//! closes a fraction of the remaining gap to `T_max`.

use serde::{Deserialize, Serialize};

use crate::context::EventState;
use crate::error::{check_unit, TrustError};
use crate::VehicleId;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrustParams {
    /// Base penalty scale.
    pub lambda: f64,
    /// Weight of event severity in the reward factor.
    pub alpha: f64,
    /// Weight of location severity in the reward factor.
    pub beta: f64,
    /// Fraction of the remaining distance to `t_max` one reward can close.
    pub mu: f64,
    pub t_neutral: f64,
    pub t_max: f64,
}

impl Default for TrustParams {
    fn default() -> Self {
        TrustParams {
            lambda: 0.4,
            alpha: 0.6,
            beta: 0.4,
            mu: 0.15,
            t_neutral: 0.5,
            t_max: 0.99,
        }
    }
}

impl TrustParams {
    pub fn validate(&self) -> Result<(), TrustError> {
        let bad = |msg: String| Err(TrustError::InvalidParams(msg));
        check_unit("lambda", self.lambda)?;
        check_unit("alpha", self.alpha)?;
        check_unit("beta", self.beta)?;
        if ((self.alpha + self.beta) - 1.0).abs() > 1e-9 {
            return bad(format!(
                "alpha + beta must be 1, got {}",
                self.alpha + self.beta
            ));
        }
        if !(self.mu > 0.0 && self.mu <= 1.0) {
            return bad(format!("mu must lie in (0, 1], got {}", self.mu));
        }
        if !(self.t_neutral > 0.0 && self.t_neutral < 1.0) {
            return bad(format!(
                "t_neutral must lie in (0, 1), got {}",
                self.t_neutral
            ));
        }
        if !(self.t_max > self.t_neutral && self.t_max <= 1.0) {
            return bad(format!(
                "t_max must lie in (t_neutral, 1], got {}",
                self.t_max
            ));
        }
        if self.t_neutral - self.lambda < 0.0 {
            return bad(format!(
                "t_neutral - lambda must be non-negative, got {}",
                self.t_neutral - self.lambda
            ));
        }
        Ok(())
    }
}

/// A local trust opinion as delivered to the central authority.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalTrustRecord {
    pub reporter: VehicleId,
    pub target: VehicleId,
    pub lt: f64,
    pub event_id: u32,
    pub issued_at: f64,
}

/// Probability that at least one of event or location is critical,
/// treating the two as independent: `1 - (1 - s_e)(1 - s_l)`.
pub fn penalty_factor(s_e: f64, s_l: f64) -> Result<f64, TrustError> {
    check_unit("s_e", s_e)?;
    check_unit("s_l", s_l)?;
    Ok(1.0 - (1.0 - s_e) * (1.0 - s_l))
}

pub fn apply_penalty(s_e: f64, s_l: f64, params: &TrustParams) -> Result<f64, TrustError> {
    let cf = penalty_factor(s_e, s_l)?;
    Ok((params.t_neutral - cf * params.lambda).clamp(0.0, 1.0))
}

pub fn reward_factor(s_e: f64, s_l: f64, params: &TrustParams) -> Result<f64, TrustError> {
    check_unit("s_e", s_e)?;
    check_unit("s_l", s_l)?;
    Ok(s_e * params.alpha + s_l * params.beta)
}

pub fn apply_reward(
    lt_old: f64,
    s_e: f64,
    s_l: f64,
    params: &TrustParams,
) -> Result<f64, TrustError> {
    check_unit("lt_old", lt_old)?;
    if lt_old > params.t_max {
        return Err(TrustError::AboveMaximum {
            lt_old,
            t_max: params.t_max,
        });
    }
    let cf = reward_factor(s_e, s_l, params)?;
    Ok((lt_old + (params.t_max - lt_old) * cf * params.mu).clamp(0.0, 1.0))
}

/// Scores one received report against the evaluator's own observation.
///
/// A false report resets trust to `T_N - CF * lambda` regardless of `lt_old`.
pub fn evaluate_report(
    reported: EventState,
    observed: EventState,
    lt_old: f64,
    s_e: f64,
    s_l: f64,
    params: &TrustParams,
) -> Result<f64, TrustError> {
    if reported == observed {
        apply_reward(lt_old, s_e, s_l, params)
    } else {
        apply_penalty(s_e, s_l, params)
    }
}
