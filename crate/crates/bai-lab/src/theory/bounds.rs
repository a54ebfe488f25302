//! Closed-form lower and upper bounds on misidentification probabilities,
//! evaluated in natural-log domain.

use serde::Serialize;

use super::BoundValue;
use crate::error::{Error, Result};
use crate::family::FlippedFamily;

const LOG_ONE_SIXTH: f64 = -1.791_759_469_228_055; // ln(1/6)

fn check_positive(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::InvalidArgument(format!("{name} must be positive, got {value}")));
    }
    Ok(())
}

/// Inputs for the four lower bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoundParams {
    /// Budget T.
    pub budget: u64,
    /// Number of arms K.
    pub arms: usize,
    /// Complexity cap `a`: the largest complexity in the instance class.
    pub cap: f64,
    /// Complexity H of the specific instance under study.
    pub h_instance: f64,
    /// Complexity of the hardest problem in the flipped family, H(1).
    pub h_worst: f64,
    /// Complexity H(i) of one chosen problem of the family.
    pub h_problem: f64,
    /// Spread statistic h* of the family.
    pub h_star: f64,
}

/// Evaluates the four lower bounds on the worst-case misidentification
/// probability, each as `ln` of the bounded quantity with its validity flag.
///
/// * `lb_known_cap`: `ln(1/6) - 120 T / a` over the class of instances with
///   complexity at most `a`, valid once `T >= a^2 4 ln(6TK) / 60^2`;
/// * `lb_adaptive_cap`: `ln(1/6) - 400 T / (ln(K) H)` for a single instance
///   of complexity `H` inside that class, additionally requiring
///   `a >= 11 K^2` and `K >= 2`;
/// * `lb_family_worst`: `ln(1/6) - 60 T / H(1) - 2 sqrt(T ln(6TK))` for the
///   hardest problem of a flipped family, condition-free;
/// * `lb_family_per_problem`: same with `H(1)` replaced by `H(i) h*`.
pub fn eval_lower_bounds(params: &LowerBoundParams) -> Result<Vec<BoundValue>> {
    let LowerBoundParams { budget, arms, cap, h_instance, h_worst, h_problem, h_star } = *params;
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be positive".into()));
    }
    if arms < 2 {
        return Err(Error::InvalidArgument(format!("need at least two arms, got {arms}")));
    }
    check_positive("cap", cap)?;
    check_positive("h_instance", h_instance)?;
    check_positive("h_worst", h_worst)?;
    check_positive("h_problem", h_problem)?;
    check_positive("h_star", h_star)?;

    let t = budget as f64;
    let k = arms as f64;
    let log_6tk = (6.0 * t * k).ln();
    let budget_floor = cap * cap * 4.0 * log_6tk / 3600.0;
    let budget_ok = t >= budget_floor;
    let deviation = 2.0 * (t * log_6tk).sqrt();

    Ok(vec![
        BoundValue {
            name: "lb_known_cap".into(),
            log_value: LOG_ONE_SIXTH - 120.0 * t / cap,
            valid: budget_ok,
            side_condition: "T >= a^2 4 ln(6TK) / 60^2".into(),
        },
        BoundValue {
            name: "lb_adaptive_cap".into(),
            log_value: LOG_ONE_SIXTH - 400.0 * t / (k.ln() * h_instance),
            valid: budget_ok && cap >= 11.0 * k * k,
            side_condition: "T >= a^2 4 ln(6TK) / 60^2, a >= 11 K^2, K >= 2".into(),
        },
        BoundValue {
            name: "lb_family_worst".into(),
            log_value: LOG_ONE_SIXTH - 60.0 * t / h_worst - deviation,
            valid: true,
            side_condition: "none".into(),
        },
        BoundValue {
            name: "lb_family_per_problem".into(),
            log_value: LOG_ONE_SIXTH - 60.0 * t / (h_problem * h_star) - deviation,
            valid: true,
            side_condition: "none".into(),
        },
    ])
}

/// Evaluates the two upper bounds, clamped at `ln(1) = 0`:
///
/// * `ub_known_cap`: `ln(2TK) - (T - K) / (18 a)` for a strategy tuned to a
///   known complexity cap `a`;
/// * `ub_successive_rejects`: `ln(K(K-1)/2) - (T - K) / (ln(2K) h2)`.
pub fn eval_upper_bounds(budget: u64, arms: usize, cap: f64, h2: f64) -> Result<Vec<BoundValue>> {
    if arms < 2 {
        return Err(Error::InvalidArgument(format!("need at least two arms, got {arms}")));
    }
    if budget < arms as u64 {
        return Err(Error::BudgetTooSmall { budget, min: arms as u64, arms });
    }
    check_positive("cap", cap)?;
    check_positive("h2", h2)?;

    let t = budget as f64;
    let k = arms as f64;
    let free = (budget - arms as u64) as f64;

    Ok(vec![
        BoundValue {
            name: "ub_known_cap".into(),
            log_value: ((2.0 * t * k).ln() - free / (18.0 * cap)).min(0.0),
            valid: true,
            side_condition: "T >= K".into(),
        },
        BoundValue {
            name: "ub_successive_rejects".into(),
            log_value: ((k * (k - 1.0) / 2.0).ln() - free / ((2.0 * k).ln() * h2)).min(0.0),
            valid: true,
            side_condition: "T >= K".into(),
        },
    ])
}

/// Exact `H(1)` of the polynomial family against its growth-regime formula.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaRegime {
    /// Exact `H(1) = sum_{k >= 2} d_k^-2`.
    pub h_worst: f64,
    /// Regime prediction: `K / (1 - 2 alpha)` for `alpha < 1/2`,
    /// `K ln K` at `alpha = 1/2`, `K^(2 alpha) / (2 alpha - 1)` above.
    pub regime_value: f64,
    /// `h_worst / regime_value`; bounded in `K` within each regime.
    pub ratio: f64,
}

/// Compares the exact worst-problem complexity of the `alpha` family with
/// the closed-form growth regime it falls into.
pub fn alpha_regime(arms: usize, alpha: f64) -> Result<AlphaRegime> {
    let family = FlippedFamily::alpha(arms, alpha)?;
    let h_worst: f64 = family.deficits()[1..].iter().map(|d| d.powi(-2)).sum();
    let k = arms as f64;
    let regime_value = if alpha < 0.5 {
        k / (1.0 - 2.0 * alpha)
    } else if alpha == 0.5 {
        k * k.ln()
    } else {
        k.powf(2.0 * alpha) / (2.0 * alpha - 1.0)
    };
    Ok(AlphaRegime { h_worst, regime_value, ratio: h_worst / regime_value })
}
