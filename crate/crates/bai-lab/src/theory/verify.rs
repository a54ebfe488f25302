//! Verifiers for the probabilistic ingredients behind the lower bounds:
//! empirical KL concentration, the change-of-measure identity, the Markov
//! pull-count step, and the pigeonhole allocation argument.

use rayon::prelude::*;
use serde::Serialize;

use crate::complexity::{family_complexities, kl_flip};
use crate::error::{Error, Result};
use crate::family::FlippedFamily;
use crate::rng::RngStream;
use crate::strategy::{run_strategy, run_with_source, RewardSource, StrategyConfig};

/// Running empirical log-likelihood-ratio averages for one arm.
///
/// For rewards `x_1..x_n` of an arm with base mean `p`, entry `t-1` holds
/// `(1/t) sum_{s<=t} [x_s ln(p/(1-p)) + (1-x_s) ln((1-p)/p)]`, the empirical
/// estimate of the flip divergence whose reference value is `kl_ref`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KlTrace {
    pub arm: usize,
    pub values: Vec<f64>,
    pub kl_ref: f64,
}

/// Computes the running KL trace of `rewards` for an arm with base mean `p`.
///
/// `p` must lie in `[1/4, 1/2)`; per-sample increments are then bounded by
/// `ln 3` in absolute value.
pub fn empirical_kl_trace(rewards: &[u8], p: f64, arm: usize) -> Result<KlTrace> {
    if !(0.25..0.5).contains(&p) {
        return Err(Error::KlDomain { value: p });
    }
    if rewards.is_empty() {
        return Err(Error::InvalidArgument("rewards must be non-empty".into()));
    }
    let on_one = (p / (1.0 - p)).ln();
    let on_zero = ((1.0 - p) / p).ln();
    let mut sum = 0.0;
    let values = rewards
        .iter()
        .enumerate()
        .map(|(t, &x)| {
            sum += if x == 1 { on_one } else { on_zero };
            sum / (t + 1) as f64
        })
        .collect();
    Ok(KlTrace { arm, values, kl_ref: kl_flip(p)? })
}

/// Deviation radius `2 sqrt(ln(6TK) / t)` used by the concentration event.
pub fn deviation_radius(budget: u64, arms: usize, t: u64) -> f64 {
    2.0 * ((6.0 * budget as f64 * arms as f64).ln() / t as f64).sqrt()
}

/// Estimates the probability of the uniform-deviation event
/// `forall k, t: |KL_hat(k, t)| - KL_k <= 2 sqrt(ln(6TK)/t)` under problem
/// `i` of the family, from `reps` full reward tables.
///
/// Replication `r` draws arm `k`'s column from
/// `RngStream::new(master_seed, r).substream(k)`.
pub fn verify_concentration(
    family: &FlippedFamily,
    i: usize,
    budget: u64,
    reps: u64,
    master_seed: u64,
) -> Result<f64> {
    let arms = family.arms();
    if i >= arms {
        return Err(Error::ArmOutOfRange { arm: i, arms });
    }
    if budget == 0 || reps == 0 {
        return Err(Error::InvalidArgument("budget and replications must be positive".into()));
    }
    let instance = family.instance(i)?;
    let p = family.base_means();
    let d = family.deficits();
    let log_6tk = (6.0 * budget as f64 * arms as f64).ln();

    // Per-arm per-time thresholds: |sum_t| <= t * KL_k + 2 sqrt(t ln(6TK)).
    // Arms with zero deficit have an identically-zero trace and always pass.
    let mut per_arm: Vec<(usize, f64, f64, f64, Vec<f64>)> = Vec::new();
    for k in 0..arms {
        if d[k] == 0.0 {
            continue;
        }
        let kl = kl_flip(p[k])?;
        let thresholds: Vec<f64> =
            (1..=budget).map(|t| t as f64 * kl + 2.0 * (t as f64 * log_6tk).sqrt()).collect();
        let on_one = (p[k] / (1.0 - p[k])).ln();
        let on_zero = ((1.0 - p[k]) / p[k]).ln();
        per_arm.push((k, instance.means()[k], on_one, on_zero, thresholds));
    }

    let holds = (0..reps)
        .into_par_iter()
        .map(|r| {
            let rng = RngStream::new(master_seed, r);
            for &(k, mean, on_one, on_zero, ref thresholds) in &per_arm {
                let mut stream = rng.substream(k as u64);
                let mut sum = 0.0;
                for threshold in thresholds {
                    sum += if stream.bernoulli(mean) == 1 { on_one } else { on_zero };
                    if sum.abs() > *threshold {
                        return 0u64;
                    }
                }
            }
            1u64
        })
        .sum::<u64>();
    Ok(holds as f64 / reps as f64)
}

/// Replays a prescribed reward prefix, recording which arm each pull went
/// to; runs abort (draw returns `None`) once the prefix is exhausted.
struct ReplaySource<'a> {
    rewards: &'a [u8],
    cursor: usize,
    pulls: Vec<usize>,
}

impl RewardSource for ReplaySource<'_> {
    fn draw(&mut self, arm: usize) -> Option<u8> {
        let reward = *self.rewards.get(self.cursor)?;
        self.cursor += 1;
        self.pulls.push(arm);
        Some(reward)
    }
}

/// Exhaustive check of the change-of-measure identity for one flipped
/// problem and one deterministic strategy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CmReport {
    /// Probability, under problem `i`, that the strategy recommends arm 0.
    pub lhs: f64,
    /// Same event reweighted under the base problem:
    /// `E_base[ 1{rec = 0} exp(-T_i KL_hat(i, T_i)) ]`.
    pub rhs: f64,
    pub abs_diff: f64,
    /// Total mass of all reward paths under problem `i` (sanity: 1).
    pub flip_mass: f64,
    /// Reweighted total mass under the base problem (sanity: 1).
    pub weighted_mass: f64,
    /// Number of distinct reward paths the strategy can observe.
    pub paths: u64,
}

/// Enumerates every reward path a deterministic strategy can observe within
/// `budget` pulls and verifies, in exact expectation, that reweighting base
/// runs by `exp(-T_i KL_hat(i, T_i))` reproduces the flipped problem's
/// recommendation probability.
///
/// Limits: `K <= 4`, `T <= 16` (at most `2^T` paths), `i >= 1`.
pub fn verify_change_of_measure(
    family: &FlippedFamily,
    i: usize,
    config: &StrategyConfig,
    budget: u64,
) -> Result<CmReport> {
    let arms = family.arms();
    if i >= arms {
        return Err(Error::ArmOutOfRange { arm: i, arms });
    }
    if i == 0 {
        return Err(Error::InvalidArgument(
            "change of measure compares a flipped problem (i >= 1) with the base problem".into(),
        ));
    }
    if arms > 4 || budget > 16 {
        return Err(Error::EnumerationBudget { arms, budget });
    }

    let p = family.base_means();
    let flip_mean = 0.5 + family.deficits()[i];
    let on_one = (p[i] / (1.0 - p[i])).ln();
    let on_zero = ((1.0 - p[i]) / p[i]).ln();

    struct Acc {
        lhs: f64,
        rhs: f64,
        flip_mass: f64,
        weighted_mass: f64,
        paths: u64,
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        prefix: &mut Vec<u8>,
        config: &StrategyConfig,
        arms: usize,
        budget: u64,
        i: usize,
        p: &[f64],
        flip_mean: f64,
        on_one: f64,
        on_zero: f64,
        acc: &mut Acc,
    ) -> Result<()> {
        let mut source = ReplaySource { rewards: prefix, cursor: 0, pulls: Vec::new() };
        match run_with_source(config, arms, budget, &mut source)? {
            None => {
                let pulls = source.pulls; // drop the borrow of `prefix`
                debug_assert_eq!(pulls.len(), prefix.len());
                for reward in [0u8, 1u8] {
                    prefix.push(reward);
                    recurse(prefix, config, arms, budget, i, p, flip_mean, on_one, on_zero, acc)?;
                    prefix.pop();
                }
            }
            Some(result) => {
                debug_assert_eq!(source.cursor, prefix.len());
                let mut flip_prob = 1.0;
                let mut base_prob = 1.0;
                let mut log_ratio = 0.0;
                for (step, &arm) in source.pulls.iter().enumerate() {
                    let x = prefix[step];
                    let base_mean = p[arm];
                    let mean = if arm == i { flip_mean } else { base_mean };
                    flip_prob *= if x == 1 { mean } else { 1.0 - mean };
                    base_prob *= if x == 1 { base_mean } else { 1.0 - base_mean };
                    if arm == i {
                        // Running total of T_i * KL_hat(i, T_i).
                        log_ratio += if x == 1 { on_one } else { on_zero };
                    }
                }
                let weight = (-log_ratio).exp();
                acc.paths += 1;
                acc.flip_mass += flip_prob;
                acc.weighted_mass += base_prob * weight;
                if result.recommended == 0 {
                    acc.lhs += flip_prob;
                    acc.rhs += base_prob * weight;
                }
            }
        }
        Ok(())
    }

    let mut acc = Acc { lhs: 0.0, rhs: 0.0, flip_mass: 0.0, weighted_mass: 0.0, paths: 0 };
    let mut prefix = Vec::with_capacity(budget as usize);
    recurse(&mut prefix, config, arms, budget, i, p, flip_mean, on_one, on_zero, &mut acc)?;

    Ok(CmReport {
        lhs: acc.lhs,
        rhs: acc.rhs,
        abs_diff: (acc.lhs - acc.rhs).abs(),
        flip_mass: acc.flip_mass,
        weighted_mass: acc.weighted_mass,
        paths: acc.paths,
    })
}

/// Seed-split estimate of how often pull counts exceed six times their mean.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarkovReport {
    /// Mean pulls per arm over the estimation half.
    pub mean_pulls: Vec<f64>,
    /// Frequency of `pulls_k >= 6 * mean_pulls_k` over the measurement half.
    pub frequencies: Vec<f64>,
    pub estimate_runs: u64,
    pub measure_runs: u64,
}

/// Runs `config` on the family's base problem `reps` times, split into two
/// disjoint seeded halves: the first half estimates each arm's mean pull
/// count, the second measures how often a run's pull count reaches six times
/// that estimate. Markov's inequality caps each frequency near `1/6`.
pub fn verify_markov(
    config: &StrategyConfig,
    family: &FlippedFamily,
    budget: u64,
    reps: u64,
    master_seed: u64,
) -> Result<MarkovReport> {
    verify_markov_split(config, family, budget, reps, master_seed, false)
}

/// [`verify_markov`] with control over which half estimates and which half
/// measures; swapping the halves must not move frequencies past the cap.
pub fn verify_markov_split(
    config: &StrategyConfig,
    family: &FlippedFamily,
    budget: u64,
    reps: u64,
    master_seed: u64,
    swap_halves: bool,
) -> Result<MarkovReport> {
    if reps < 2 {
        return Err(Error::InvalidArgument("seed-split needs at least two replications".into()));
    }
    let instance = family.instance(0)?;
    let arms = family.arms();
    // Validate once so the parallel loops cannot fail.
    run_strategy(config, &instance, budget, &RngStream::new(master_seed, 0))?;

    let half = reps / 2;
    let (estimate_range, measure_range) =
        if swap_halves { (half..reps, 0..half) } else { (0..half, half..reps) };
    let estimate_runs = estimate_range.end - estimate_range.start;
    let measure_runs = measure_range.end - measure_range.start;

    let pull_sums = estimate_range
        .into_par_iter()
        .fold(
            || vec![0u64; arms],
            |mut acc, r| {
                let run = run_strategy(config, &instance, budget, &RngStream::new(master_seed, r))
                    .expect("validated");
                for (slot, pulls) in acc.iter_mut().zip(&run.pulls) {
                    *slot += pulls;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; arms],
            |mut a, b| {
                for (slot, value) in a.iter_mut().zip(&b) {
                    *slot += value;
                }
                a
            },
        );
    let mean_pulls: Vec<f64> = pull_sums.iter().map(|&s| s as f64 / estimate_runs as f64).collect();

    let exceed_counts = measure_range
        .into_par_iter()
        .fold(
            || vec![0u64; arms],
            |mut acc, r| {
                let run = run_strategy(config, &instance, budget, &RngStream::new(master_seed, r))
                    .expect("validated");
                for k in 0..arms {
                    acc[k] += u64::from(run.pulls[k] as f64 >= 6.0 * mean_pulls[k]);
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; arms],
            |mut a, b| {
                for (slot, value) in a.iter_mut().zip(&b) {
                    *slot += value;
                }
                a
            },
        );
    let frequencies: Vec<f64> =
        exceed_counts.iter().map(|&c| c as f64 / measure_runs as f64).collect();

    Ok(MarkovReport { mean_pulls, frequencies, estimate_runs, measure_runs })
}

/// Indices witnessing the pigeonhole step for one allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PigeonholeWitness {
    /// Some `i >= 1` with `t_i <= T / (H(1) d_i^2)`.
    pub worst_case_problem: usize,
    /// Some `i >= 1` with `t_i <= T / (h* d_i^2 H(i))`.
    pub spread_problem: usize,
}

/// Finds, for any allocation `t_1..t_K` with `sum <= budget`, problems that
/// receive no more than their pigeonhole share of the budget.
///
/// Both witnesses exist for every feasible allocation: `sum_{i>=1} d_i^-2`
/// is the base problem's complexity `h[0]`, and `sum_{i>=1} 1/(d_i^2 h[i])`
/// is `h_star`, so in each sum some term must fall at or below its share.
/// A missing witness therefore indicates an infeasible allocation.
pub fn pigeonhole_witness(
    family: &FlippedFamily,
    allocation: &[f64],
    budget: f64,
) -> Result<PigeonholeWitness> {
    let arms = family.arms();
    if allocation.len() != arms {
        return Err(Error::InvalidArgument(format!(
            "allocation has {} entries for {arms} arms",
            allocation.len()
        )));
    }
    if !budget.is_finite() || budget <= 0.0 {
        return Err(Error::InvalidArgument(format!("budget must be positive, got {budget}")));
    }
    if allocation.iter().any(|&t| !t.is_finite() || t < 0.0) {
        return Err(Error::InvalidArgument("allocation entries must be non-negative".into()));
    }
    let total: f64 = allocation.iter().sum();
    const SLACK: f64 = 1.0 + 1e-9;
    if total > budget * SLACK {
        return Err(Error::InvalidArgument(format!(
            "allocation sums to {total}, exceeding the budget {budget}"
        )));
    }

    let fc = family_complexities(family);
    let d = family.deficits();

    let argmin = |score: &dyn Fn(usize) -> f64| {
        let mut best = 1;
        for idx in 2..arms {
            if score(idx) < score(best) {
                best = idx;
            }
        }
        best
    };

    let worst_case_problem = argmin(&|idx| allocation[idx] * d[idx] * d[idx]);
    let spread_problem = argmin(&|idx| allocation[idx] * d[idx] * d[idx] * fc.h[idx]);

    let worst_ok =
        allocation[worst_case_problem] * d[worst_case_problem].powi(2) * fc.h[0] <= budget * SLACK;
    let spread_ok =
        allocation[spread_problem] * d[spread_problem].powi(2) * fc.h[spread_problem] * fc.h_star
            <= budget * SLACK;
    if !worst_ok || !spread_ok {
        return Err(Error::InvalidArgument(
            "no pigeonhole witness: allocation is not budget-feasible".into(),
        ));
    }
    Ok(PigeonholeWitness { worst_case_problem, spread_problem })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::StrategyKind;

    const LN3: f64 = 1.0986122886681098;

    #[test]
    fn trace_of_constant_rewards_sits_at_plus_minus_ln3() {
        let zeros = empirical_kl_trace(&[0u8; 5], 0.25, 0).unwrap();
        for v in &zeros.values {
            assert!((v - LN3).abs() < 1e-14, "{v}");
        }
        assert!((zeros.kl_ref - 0.5 * LN3).abs() < 1e-14);

        let ones = empirical_kl_trace(&[1u8; 5], 0.25, 2).unwrap();
        for v in &ones.values {
            assert!((v + LN3).abs() < 1e-14, "{v}");
        }
        assert_eq!(ones.arm, 2);
    }

    #[test]
    fn trace_increments_are_bounded_by_ln3() {
        let mut rng = RngStream::new(5150, 0);
        for p in [0.25, 0.3, 0.4, 0.49] {
            let rewards: Vec<u8> = (0..200).map(|_| rng.bernoulli(0.5)).collect();
            let trace = empirical_kl_trace(&rewards, p, 0).unwrap();
            let mut prev_sum = 0.0;
            for (t, &v) in trace.values.iter().enumerate() {
                let sum = v * (t + 1) as f64;
                assert!((sum - prev_sum).abs() <= LN3 + 1e-12);
                prev_sum = sum;
            }
        }
    }

    #[test]
    fn trace_rejects_out_of_domain_parameters_and_empty_rewards() {
        assert!(empirical_kl_trace(&[0], 0.2, 0).is_err());
        assert!(empirical_kl_trace(&[0], 0.5, 0).is_err());
        assert!(empirical_kl_trace(&[], 0.3, 0).is_err());
    }

    #[test]
    fn deviation_radius_matches_its_formula() {
        let r = deviation_radius(200, 5, 4);
        assert!((r - (6.0f64 * 200.0 * 5.0).ln().sqrt()).abs() < 1e-14);
    }

    #[test]
    fn concentration_event_is_frequent_and_deterministic() {
        let family = FlippedFamily::alpha(3, 1.0).unwrap();
        let freq = verify_concentration(&family, 1, 50, 400, 31).unwrap();
        assert!(freq >= 0.8, "freq = {freq}");
        assert_eq!(freq, verify_concentration(&family, 1, 50, 400, 31).unwrap());
        assert!(verify_concentration(&family, 5, 50, 10, 0).is_err());
    }

    #[test]
    fn change_of_measure_matches_the_hand_enumerated_two_arm_case() {
        // Family (1/2, 1/4), uniform, T = 2: the run errs under problem 1
        // (means (0.5, 0.75)) unless arm 0 pays 0 and arm 1 pays 1, so
        // lhs = 1 - 0.5 * 0.75 = 0.625 over exactly 4 paths.
        let family = FlippedFamily::alpha(2, 1.0).unwrap();
        let report = verify_change_of_measure(&family, 1, &StrategyConfig::uniform(), 2).unwrap();
        assert_eq!(report.paths, 4);
        assert!((report.lhs - 0.625).abs() < 1e-12, "lhs = {}", report.lhs);
        assert!(report.abs_diff <= 1e-12 * report.lhs);
        assert!((report.flip_mass - 1.0).abs() < 1e-12);
        assert!((report.weighted_mass - 1.0).abs() < 1e-12);
    }

    #[test]
    fn change_of_measure_handles_single_pull_budgets() {
        // T = 1 < K: only uniform runs; it always recommends arm 0 (the
        // pulled arm wins or ties at zero), so both sides are exactly 1.
        let family = FlippedFamily::alpha(2, 1.0).unwrap();
        let report = verify_change_of_measure(&family, 1, &StrategyConfig::uniform(), 1).unwrap();
        assert_eq!(report.paths, 2);
        assert_eq!(report.lhs, 1.0);
        assert!((report.rhs - 1.0).abs() < 1e-14);
    }

    #[test]
    fn change_of_measure_enforces_enumeration_limits() {
        let big = FlippedFamily::alpha(5, 1.0).unwrap();
        assert!(matches!(
            verify_change_of_measure(&big, 1, &StrategyConfig::uniform(), 5),
            Err(Error::EnumerationBudget { arms: 5, .. })
        ));
        let family = FlippedFamily::alpha(3, 1.0).unwrap();
        assert!(matches!(
            verify_change_of_measure(&family, 1, &StrategyConfig::uniform(), 17),
            Err(Error::EnumerationBudget { budget: 17, .. })
        ));
        assert!(verify_change_of_measure(&family, 0, &StrategyConfig::uniform(), 4).is_err());
        assert!(verify_change_of_measure(&family, 3, &StrategyConfig::uniform(), 4).is_err());
    }

    #[test]
    fn markov_frequencies_vanish_for_deterministic_allocations() {
        // Uniform pulls are deterministic: every run equals the mean, which
        // can never reach six times itself.
        let family = FlippedFamily::alpha(4, 1.0).unwrap();
        let report = verify_markov(&StrategyConfig::uniform(), &family, 20, 200, 17).unwrap();
        assert_eq!(report.mean_pulls, vec![5.0; 4]);
        assert_eq!(report.frequencies, vec![0.0; 4]);
        assert_eq!(report.estimate_runs, 100);
        assert_eq!(report.measure_runs, 100);

        let swapped =
            verify_markov_split(&StrategyConfig::uniform(), &family, 20, 200, 17, true).unwrap();
        assert_eq!(swapped.frequencies, vec![0.0; 4]);
    }

    #[test]
    fn markov_report_is_deterministic_for_adaptive_strategies() {
        let family = FlippedFamily::alpha(3, 1.0).unwrap();
        let cfg = StrategyConfig { kind: StrategyKind::SuccessiveRejects, exploration_a: None };
        let a = verify_markov(&cfg, &family, 60, 400, 23).unwrap();
        let b = verify_markov(&cfg, &family, 60, 400, 23).unwrap();
        assert_eq!(a, b);
        for f in &a.frequencies {
            assert!((0.0..=1.0).contains(f));
        }
    }

    #[test]
    fn pigeonhole_witnesses_exist_for_feasible_allocations() {
        let family = FlippedFamily::alpha(8, 1.0).unwrap();
        let alloc = vec![125.0; 8];
        let w = pigeonhole_witness(&family, &alloc, 1000.0).unwrap();
        assert!(w.worst_case_problem >= 1 && w.worst_case_problem < 8);
        assert!(w.spread_problem >= 1 && w.spread_problem < 8);

        // Definitely infeasible allocation is rejected up front.
        assert!(pigeonhole_witness(&family, &[500.0; 8], 1000.0).is_err());
        assert!(pigeonhole_witness(&family, &[1.0; 7], 1000.0).is_err());
        assert!(pigeonhole_witness(&family, &[-1.0; 8], 1000.0).is_err());
    }

    #[test]
    fn pigeonhole_witness_conditions_hold_quantitatively() {
        let family = FlippedFamily::alpha(8, 1.0).unwrap();
        let fc = family_complexities(&family);
        let d = family.deficits();
        // Skewed but feasible allocation.
        let alloc: Vec<f64> = (0..8).map(|k| 10.0 + 30.0 * k as f64).collect();
        let budget: f64 = alloc.iter().sum();
        let w = pigeonhole_witness(&family, &alloc, budget).unwrap();
        let i = w.worst_case_problem;
        assert!(alloc[i] <= budget / (fc.h[0] * d[i] * d[i]) * (1.0 + 1e-9));
        let j = w.spread_problem;
        assert!(alloc[j] <= budget / (fc.h_star * d[j] * d[j] * fc.h[j]) * (1.0 + 1e-9));
    }
}
