//! Error vocabulary shared across the laboratory.

use thiserror::Error;

/// Everything that can go wrong when building instances, schedules, or checks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("instance must have at least one arm")]
    EmptyInstance,

    #[error("mean {value} at arm {arm} is outside [0, 1]")]
    MeanOutOfRange { arm: usize, value: f64 },

    #[error("arm index {arm} out of range for {arms} arms")]
    ArmOutOfRange { arm: usize, arms: usize },

    #[error("KL divergence undefined for parameter {value}: must lie strictly inside (0, 1)")]
    KlDomain { value: f64 },

    #[error("complexity undefined: every arm is optimal")]
    AllArmsOptimal,

    #[error("inclusive complexity undefined: the optimal mean is tied")]
    TiedOptimum,

    #[error("family needs at least two arms")]
    FamilyTooSmall,

    #[error("family tail mean {value} at arm {arm} is outside [1/4, 1/2)")]
    FamilyMeanOutOfRange { arm: usize, value: f64 },

    #[error("budget {budget} is below the minimum {min} for {arms} arms")]
    BudgetTooSmall { budget: u64, min: u64, arms: usize },

    #[error("ucb_e requires a positive exploration parameter `a`")]
    MissingExploration,

    #[error("exploration parameter `a` is only meaningful for ucb_e")]
    UnexpectedExploration,

    #[error("enumeration budget exceeded: K = {arms}, T = {budget} (limit K <= 4, T <= 16)")]
    EnumerationBudget { arms: usize, budget: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
