//! Monte Carlo estimation of misidentification probabilities.
//!
//! Replications are the unit of parallelism: replication `r` of an
//! experiment with master seed `s` always runs on the stream
//! `derive_stream_seed(s, r)`, and results are integer-count reductions, so
//! estimates are bit-identical regardless of worker count or scheduling.

use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::bandit::BanditInstance;
use crate::error::{Error, Result};
use crate::family::FlippedFamily;
use crate::rng::{derive_stream_seed, RngStream};
use crate::strategy::{run_strategy, StrategyConfig, StrategyKind};

/// Point estimate of an error probability with a Wilson score interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorEstimate {
    pub replications: u64,
    pub errors: u64,
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub level: f64,
}

/// Natural log of a point estimate; zero counts carry the resolution floor
/// `1/R` instead of `-inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LogPoint {
    Value(f64),
    BelowResolution { resolution: f64 },
}

impl ErrorEstimate {
    pub fn log_point(&self) -> LogPoint {
        if self.errors == 0 {
            LogPoint::BelowResolution { resolution: 1.0 / self.replications as f64 }
        } else {
            LogPoint::Value(self.point.ln())
        }
    }
}

/// Two-sided Wilson score interval for `errors` successes in `reps` trials.
///
/// The center is `(p + z^2/2n) / (1 + z^2/n)` with radius
/// `z sqrt(p(1-p)/n + z^2/4n^2) / (1 + z^2/n)`; boundary counts produce the
/// exact endpoints 0 and 1.
pub fn wilson_interval(errors: u64, reps: u64, level: f64) -> Result<(f64, f64)> {
    if reps == 0 {
        return Err(Error::InvalidArgument("interval needs at least one trial".into()));
    }
    if errors > reps {
        return Err(Error::InvalidArgument(format!(
            "errors ({errors}) exceed replications ({reps})"
        )));
    }
    if !level.is_finite() || level <= 0.0 || level >= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "confidence level must lie in (0, 1), got {level}"
        )));
    }
    let z = Normal::standard().inverse_cdf(1.0 - (1.0 - level) / 2.0);
    let n = reps as f64;
    let p = errors as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let radius = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let low = if errors == 0 { 0.0 } else { (center - radius).max(0.0) };
    let high = if errors == reps { 1.0 } else { (center + radius).min(1.0) };
    Ok((low, high))
}

/// Estimates the misidentification probability of `config` on `instance` at
/// budget `budget` from `reps` independent replications.
///
/// Replication `r` runs on stream `derive_stream_seed(master_seed, r)`; an
/// error is a recommendation outside the instance's best-arm set.
pub fn estimate_error(
    config: &StrategyConfig,
    instance: &BanditInstance,
    budget: u64,
    reps: u64,
    level: f64,
    master_seed: u64,
) -> Result<ErrorEstimate> {
    if reps == 0 {
        return Err(Error::InvalidArgument("need at least one replication".into()));
    }
    // Validate config/budget once up front so the hot loop cannot fail.
    run_strategy(config, instance, budget, &RngStream::new(master_seed, 0))?;
    let errors = (0..reps)
        .into_par_iter()
        .map(|r| {
            let rng = RngStream::new(master_seed, r);
            let run = run_strategy(config, instance, budget, &rng).expect("validated");
            u64::from(!instance.is_best(run.recommended))
        })
        .sum();
    let (ci_low, ci_high) = wilson_interval(errors, reps, level)?;
    Ok(ErrorEstimate {
        replications: reps,
        errors,
        point: errors as f64 / reps as f64,
        ci_low,
        ci_high,
        level,
    })
}

/// One budget of a family sweep: error estimates for every problem, and
/// which problem was worst.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub family_id: String,
    pub strategy: StrategyKind,
    pub arms: usize,
    pub budget: u64,
    /// `per_problem[i]` estimates the error on the family's problem `i`.
    pub per_problem: Vec<ErrorEstimate>,
    /// Index of the largest point estimate (lowest index on ties).
    pub worst_problem: usize,
}

impl SweepRow {
    pub fn worst_error(&self) -> &ErrorEstimate {
        &self.per_problem[self.worst_problem]
    }
}

/// Sweeps a strategy across every problem of `family` and every budget in
/// `budgets` (which must be strictly increasing).
///
/// Each `(budget, problem)` cell gets its own derived master seed, so cells
/// are statistically independent and individually reproducible.
pub fn sweep_family(
    config: &StrategyConfig,
    family: &FlippedFamily,
    budgets: &[u64],
    reps: u64,
    level: f64,
    master_seed: u64,
) -> Result<Vec<SweepRow>> {
    if budgets.is_empty() {
        return Err(Error::InvalidArgument("budget grid must be non-empty".into()));
    }
    if budgets.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("budget grid must be strictly increasing".into()));
    }
    let mut rows = Vec::with_capacity(budgets.len());
    for (t_index, &budget) in budgets.iter().enumerate() {
        let budget_seed = derive_stream_seed(master_seed, t_index as u64);
        let mut per_problem = Vec::with_capacity(family.arms());
        for i in 0..family.arms() {
            let cell_seed = derive_stream_seed(budget_seed, i as u64);
            let instance = family.instance(i)?;
            per_problem.push(estimate_error(config, &instance, budget, reps, level, cell_seed)?);
        }
        let mut worst = 0;
        for i in 1..per_problem.len() {
            if per_problem[i].point > per_problem[worst].point {
                worst = i;
            }
        }
        rows.push(SweepRow {
            family_id: family.label().to_string(),
            strategy: config.kind,
            arms: family.arms(),
            budget,
            per_problem,
            worst_problem: worst,
        });
    }
    Ok(rows)
}
