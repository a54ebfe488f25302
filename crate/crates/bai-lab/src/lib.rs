//! A laboratory for fixed-budget best-arm identification on Bernoulli
//! bandits.
//!
//! The crate provides, in load order:
//!
//! - [`rng`]: a counter-based random number generator with cheaply derivable
//!   independent streams, so every experiment is a pure function of one
//!   master seed.
//! - [`bandit`]: bandit instances (vectors of Bernoulli means) and the
//!   outcome record of a single identification run.
//! - [`family`]: one-parameter families of instances built by flipping a
//!   single arm's mean about `1/2`, the hard-instance construction the
//!   lower-bound machinery revolves around.
//! - [`complexity`]: gap-based hardness measures (`H`, `H2`, the inclusive
//!   variant) and flip divergences, plus per-problem complexities of a
//!   family.
//! - [`strategy`]: uniform allocation, successive rejects, successive
//!   halving, and UCB-E, all driven by per-arm reward streams so runs
//!   replay bit-for-bit.
//! - [`simulate`]: Monte Carlo estimation of misidentification
//!   probabilities with Wilson confidence intervals, and budget sweeps
//!   across a family.
//! - [`theory`]: evaluators for the known lower/upper bound curves and
//!   numerical verifiers for the steps of their proofs (change of measure,
//!   concentration, Markov pull counts, pigeonhole allocation).
//!
//! Everything downstream of a seed is deterministic: rerunning any
//! computation with the same inputs, in any thread configuration,
//! reproduces identical bytes.

pub mod bandit;
pub mod complexity;
pub mod error;
pub mod family;
pub mod rng;
pub mod simulate;
pub mod strategy;
pub mod theory;

pub use bandit::{BanditInstance, RunResult};
pub use complexity::{
    complexity_h, complexity_h2, complexity_h_incl, complexity_report, family_complexities,
    kl_bernoulli, kl_flip, ComplexityReport, FamilyComplexity,
};
pub use error::{Error, Result};
pub use family::{make_uniform_random_instance, FamilySpec, FlippedFamily};
pub use rng::{derive_stream_seed, RngStream};
pub use simulate::{
    estimate_error, sweep_family, wilson_interval, ErrorEstimate, LogPoint, SweepRow,
};
pub use strategy::{
    run_strategy, run_strategy_with_streams, sh_rounds, sr_allocation, ucb_e_default_a, ShRound,
    StrategyConfig, StrategyKind,
};
