//! Theoretical layer: closed-form bound evaluators and Monte Carlo /
//! exhaustive verifiers for the inequalities behind them.

mod bounds;
mod verify;

pub use bounds::{
    alpha_regime, eval_lower_bounds, eval_upper_bounds, AlphaRegime, LowerBoundParams,
};
pub use verify::{
    deviation_radius, empirical_kl_trace, pigeonhole_witness, verify_change_of_measure,
    verify_concentration, verify_markov, verify_markov_split, CmReport, KlTrace, MarkovReport,
    PigeonholeWitness,
};

use serde::Serialize;

/// One evaluated bound, in natural-log domain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundValue {
    pub name: String,
    /// `ln` of the bounded probability; never positive.
    pub log_value: f64,
    /// Whether the bound's side conditions hold for these inputs.
    pub valid: bool,
    /// Human-readable statement of the side conditions.
    pub side_condition: String,
}

/// Outcome of one verification check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check's reference value is below measurement resolution, so the
    /// comparison carries no information at these parameters.
    Vacuous,
}

/// A named check with the two compared quantities and the seeds involved.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: CheckStatus,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub seeds: Vec<u64>,
}
