//! Straight-line reference formulas, written out term by term over plain
//! tuples so they share no code with the library.

/// (trusted, risky, uncertain)
pub type Triple = (f64, f64, f64);

pub fn mass(gt: f64, lt: f64) -> Triple {
    (gt * lt, gt - gt * lt, 1.0 - gt)
}

/// Returns the combined triple and the conflict.
pub fn yager(a: Triple, b: Triple) -> (Triple, f64) {
    let (at, ar, au) = a;
    let (bt, br, bu) = b;
    let t = at * bt + at * bu + au * bt;
    let r = ar * br + ar * bu + au * br;
    let k = at * br + ar * bt;
    let u = au * bu + k;
    ((t, r, u), k)
}

pub fn accentuate(m: Triple, current_risk: f64, tau: f64, cap: f64) -> Triple {
    let (t, r, u) = m;
    if current_risk <= tau {
        return m;
    }
    let delta = current_risk - tau;
    let du = if u < delta { u } else { delta };
    let rest = delta - du;
    let dt = if rest > 0.0 {
        let limit = t * cap;
        if limit < rest {
            limit
        } else {
            rest
        }
    } else {
        0.0
    };
    (t - dt, r + du + dt, u - du)
}

pub fn pignistic(m: Triple) -> f64 {
    m.0 + 0.5 * m.2
}

pub fn penalty_cf(s_e: f64, s_l: f64) -> f64 {
    s_e + s_l - s_e * s_l
}

pub fn penalized(s_e: f64, s_l: f64, lambda: f64, t_n: f64) -> f64 {
    t_n - lambda * penalty_cf(s_e, s_l)
}

pub fn reward_cf(s_e: f64, s_l: f64, alpha: f64, beta: f64) -> f64 {
    alpha * s_e + beta * s_l
}

pub fn rewarded(lt: f64, s_e: f64, s_l: f64, alpha: f64, beta: f64, mu: f64, t_max: f64) -> f64 {
    lt + mu * reward_cf(s_e, s_l, alpha, beta) * (t_max - lt)
}

/// One authority round for a target whose only evidence is a single report
/// from a reporter sitting at neutral trust.
pub fn neutral_reporter_round(history: Triple, lt: f64, tau: f64, cap: f64) -> Triple {
    let current = mass(0.5, lt);
    let (merged, _) = yager(history, current);
    accentuate(merged, current.1, tau, cap)
}

/// Weighted blend used by the symmetric comparator.
pub fn baseline_blend(prior: f64, reports: &[(f64, f64)]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for &(gt, lt) in reports {
        num += gt * lt;
        den += gt;
    }
    if den == 0.0 {
        prior
    } else {
        0.5 * prior + 0.5 * num / den
    }
}

/// Number of maximum-severity rewards needed to climb from `from` to `to`.
pub fn rewards_to_reach(from: f64, to: f64, mu: f64, t_max: f64) -> u32 {
    let mut lt = from;
    let mut n = 0;
    while lt < to {
        lt = lt + mu * 1.0 * (t_max - lt);
        n += 1;
    }
    n
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn close3(a: Triple, b: Triple, tol: f64) -> bool {
    close(a.0, b.0, tol) && close(a.1, b.1, tol) && close(a.2, b.2, tol)
}
