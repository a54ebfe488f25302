//! Fixed-budget identification strategies and their pull schedules.
//!
//! All strategies are deterministic functions of the observed rewards: ties
//! in rejection, halving, pulling, and recommendation all break toward the
//! lowest arm index. Rewards for arm `k` are drawn from per-arm stream `k`,
//! so two strategies run against the same seed face identical reward tables.

use serde::{Deserialize, Serialize};

use crate::bandit::{BanditInstance, RunResult};
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// The four implemented strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyKind {
    /// Round-robin over all arms, recommend the best empirical mean.
    Uniform,
    /// Phased elimination: reject the empirically worst arm per phase.
    SuccessiveRejects,
    /// Halve the active set each round, equal per-round budgets.
    SuccessiveHalving,
    /// Optimistic index `mean + sqrt(a / pulls)`, recommend best mean.
    UcbE,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 4] = [
        StrategyKind::Uniform,
        StrategyKind::SuccessiveRejects,
        StrategyKind::SuccessiveHalving,
        StrategyKind::UcbE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Uniform => "uniform",
            StrategyKind::SuccessiveRejects => "successive_rejects",
            StrategyKind::SuccessiveHalving => "successive_halving",
            StrategyKind::UcbE => "ucb_e",
        }
    }
}

impl std::fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A strategy choice plus its parameters.
///
/// JSON shape: `{"kind": "ucb_e", "a": 176.0}`; the `a` field is only legal
/// (and then mandatory) for `ucb_e`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyConfig {
    pub kind: StrategyKind,
    #[serde(rename = "a", default, skip_serializing_if = "Option::is_none")]
    pub exploration_a: Option<f64>,
}

impl StrategyConfig {
    pub fn uniform() -> Self {
        Self { kind: StrategyKind::Uniform, exploration_a: None }
    }

    pub fn successive_rejects() -> Self {
        Self { kind: StrategyKind::SuccessiveRejects, exploration_a: None }
    }

    pub fn successive_halving() -> Self {
        Self { kind: StrategyKind::SuccessiveHalving, exploration_a: None }
    }

    pub fn ucb_e(a: f64) -> Self {
        Self { kind: StrategyKind::UcbE, exploration_a: Some(a) }
    }

    pub fn validate(&self) -> Result<()> {
        match (self.kind, self.exploration_a) {
            (StrategyKind::UcbE, Some(a)) if a.is_finite() && a > 0.0 => Ok(()),
            (StrategyKind::UcbE, _) => Err(Error::MissingExploration),
            (_, Some(_)) => Err(Error::UnexpectedExploration),
            (_, None) => Ok(()),
        }
    }

    /// Smallest budget the strategy can run with on `arms` arms.
    ///
    /// Uniform degrades gracefully below one pull per arm (unpulled arms use
    /// the mean-0 convention); the elimination schedules need a full sweep.
    pub fn min_budget(&self, arms: usize) -> u64 {
        match self.kind {
            StrategyKind::Uniform => 1,
            _ => arms as u64,
        }
    }
}

/// Default exploration parameter for UCB-E: `(25/36) (T - K) / h_incl`,
/// with `h_incl` the inclusive complexity of the target instance.
pub fn ucb_e_default_a(budget: u64, arms: usize, h_incl: f64) -> Result<f64> {
    if budget <= arms as u64 {
        return Err(Error::BudgetTooSmall { budget, min: arms as u64 + 1, arms });
    }
    if !h_incl.is_finite() || h_incl <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "inclusive complexity must be positive, got {h_incl}"
        )));
    }
    Ok(25.0 / 36.0 * (budget - arms as u64) as f64 / h_incl)
}

/// Cumulative per-arm pull targets `n_1 <= ... <= n_(K-1)` for successive
/// rejects: `n_j = ceil((T - K) / (logbar(K) (K + 1 - j)))`, floored at one
/// pull, with `logbar(K) = 1/2 + sum_{i=2..K} 1/i`.
///
/// Entry `j` (0-based) is the per-arm pull count during phases `1..=j+1`;
/// the arm rejected at the end of phase `j+1` has been pulled exactly
/// `n_(j+1)` times. Total pulls never exceed `T`.
pub fn sr_allocation(arms: usize, budget: u64) -> Result<Vec<u64>> {
    if arms < 2 {
        return Err(Error::InvalidArgument(format!(
            "successive rejects needs at least two arms, got {arms}"
        )));
    }
    if budget < arms as u64 {
        return Err(Error::BudgetTooSmall { budget, min: arms as u64, arms });
    }
    let logbar = 0.5 + (2..=arms).map(|i| 1.0 / i as f64).sum::<f64>();
    let free = (budget - arms as u64) as f64;
    Ok((1..arms)
        .map(|j| {
            let raw = (free / (logbar * (arms + 1 - j) as f64)).ceil() as u64;
            raw.max(1)
        })
        .collect())
}

/// One round of successive halving: how many arms are still active and how
/// many times each is pulled this round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShRound {
    pub survivors: usize,
    pub pulls_per_arm: u64,
}

/// Schedule for successive halving: `ceil(log2 K)` rounds, each with budget
/// `floor(T / rounds)` split equally among the surviving arms (at least one
/// pull per arm when the budget allows), keeping the top `ceil(n/2)` arms
/// after each round.
///
/// Per-round pulls are additionally capped by the remaining budget, so the
/// total never exceeds `T` even when `T < K ceil(log2 K)`; with
/// `T >= K ceil(log2 K)` the cap is never active.
pub fn sh_rounds(arms: usize, budget: u64) -> Result<Vec<ShRound>> {
    if arms < 2 {
        return Err(Error::InvalidArgument(format!(
            "successive halving needs at least two arms, got {arms}"
        )));
    }
    if budget < arms as u64 {
        return Err(Error::BudgetTooSmall { budget, min: arms as u64, arms });
    }
    let rounds = usize::BITS - (arms - 1).leading_zeros(); // ceil(log2 arms)
    let per_round = budget / u64::from(rounds);
    let mut remaining = budget;
    let mut survivors = arms;
    let mut schedule = Vec::with_capacity(rounds as usize);
    for _ in 0..rounds {
        let pulls_per_arm = (per_round / survivors as u64).max(1).min(remaining / survivors as u64);
        remaining -= pulls_per_arm * survivors as u64;
        schedule.push(ShRound { survivors, pulls_per_arm });
        survivors = survivors.div_ceil(2);
    }
    Ok(schedule)
}

/// Where a run's rewards come from. Sampled sources never run dry; replay
/// sources used by the exhaustive verifier return `None` when the prescribed
/// reward prefix is exhausted, which aborts the run.
pub(crate) trait RewardSource {
    fn draw(&mut self, arm: usize) -> Option<u8>;
}

/// Reward source backed by one independent stream per arm.
pub(crate) struct SampledSource<'a> {
    means: &'a [f64],
    streams: Vec<RngStream>,
}

impl RewardSource for SampledSource<'_> {
    fn draw(&mut self, arm: usize) -> Option<u8> {
        Some(self.streams[arm].bernoulli(self.means[arm]))
    }
}

/// Empirical state of a run: integer pull and success counts per arm.
struct Tally {
    pulls: Vec<u64>,
    successes: Vec<u64>,
}

impl Tally {
    fn new(arms: usize) -> Self {
        Self { pulls: vec![0; arms], successes: vec![0; arms] }
    }

    /// Empirical mean, with the documented 0.0 convention for unpulled arms.
    fn mean(&self, arm: usize) -> f64 {
        if self.pulls[arm] == 0 {
            0.0
        } else {
            self.successes[arm] as f64 / self.pulls[arm] as f64
        }
    }

    fn pull<S: RewardSource>(&mut self, source: &mut S, arm: usize) -> Option<()> {
        let reward = source.draw(arm)?;
        self.pulls[arm] += 1;
        self.successes[arm] += u64::from(reward);
        Some(())
    }

    /// Arm with the highest empirical mean; ties go to the lowest index.
    fn recommend(&self, candidates: impl Iterator<Item = usize>) -> usize {
        let mut best: Option<usize> = None;
        for k in candidates {
            match best {
                None => best = Some(k),
                Some(b) if self.mean(k) > self.mean(b) => best = Some(k),
                _ => {}
            }
        }
        best.expect("at least one candidate")
    }

    fn into_result(self, recommended: usize) -> RunResult {
        let empirical_means = (0..self.pulls.len()).map(|k| self.mean(k)).collect();
        RunResult { recommended, pulls: self.pulls, empirical_means }
    }
}

/// Runs `config` against an arbitrary reward source. Returns `Ok(None)` when
/// the source runs dry (replay enumeration); sampled runs always complete.
pub(crate) fn run_with_source<S: RewardSource>(
    config: &StrategyConfig,
    arms: usize,
    budget: u64,
    source: &mut S,
) -> Result<Option<RunResult>> {
    config.validate()?;
    if arms < 2 {
        return Err(Error::InvalidArgument(format!(
            "strategies need at least two arms, got {arms}"
        )));
    }
    let min = config.min_budget(arms);
    if budget < min {
        return Err(Error::BudgetTooSmall { budget, min, arms });
    }

    let mut tally = Tally::new(arms);
    let recommended = match config.kind {
        StrategyKind::Uniform => {
            for t in 0..budget {
                let arm = (t % arms as u64) as usize;
                if tally.pull(source, arm).is_none() {
                    return Ok(None);
                }
            }
            tally.recommend(0..arms)
        }
        StrategyKind::SuccessiveRejects => {
            let targets = sr_allocation(arms, budget)?;
            let mut active: Vec<usize> = (0..arms).collect();
            let mut reached = 0;
            for &target in &targets {
                let quota = target - reached;
                reached = target;
                for &arm in &active {
                    for _ in 0..quota {
                        if tally.pull(source, arm).is_none() {
                            return Ok(None);
                        }
                    }
                }
                // Reject the empirically worst active arm; ties favor the
                // lower index, so the highest-indexed tied arm is rejected.
                let mut worst = active[0];
                for &arm in &active[1..] {
                    if tally.mean(arm) <= tally.mean(worst) {
                        worst = arm;
                    }
                }
                active.retain(|&arm| arm != worst);
            }
            active[0]
        }
        StrategyKind::SuccessiveHalving => {
            let schedule = sh_rounds(arms, budget)?;
            let mut active: Vec<usize> = (0..arms).collect();
            for round in &schedule {
                debug_assert_eq!(round.survivors, active.len());
                for &arm in &active {
                    for _ in 0..round.pulls_per_arm {
                        if tally.pull(source, arm).is_none() {
                            return Ok(None);
                        }
                    }
                }
                // Keep the top half by cumulative mean, lowest indices first
                // on ties, then restore index order for the next round.
                active.sort_by(|&a, &b| {
                    tally.mean(b).partial_cmp(&tally.mean(a)).unwrap().then(a.cmp(&b))
                });
                active.truncate(active.len().div_ceil(2));
                active.sort_unstable();
            }
            debug_assert_eq!(active.len(), 1);
            active[0]
        }
        StrategyKind::UcbE => {
            let a = config.exploration_a.expect("validated");
            for _ in 0..budget {
                let arm = match (0..arms).find(|&k| tally.pulls[k] == 0) {
                    Some(unpulled) => unpulled,
                    None => {
                        let index = |k: usize| tally.mean(k) + (a / tally.pulls[k] as f64).sqrt();
                        let mut best = 0;
                        for k in 1..arms {
                            if index(k) > index(best) {
                                best = k;
                            }
                        }
                        best
                    }
                };
                if tally.pull(source, arm).is_none() {
                    return Ok(None);
                }
            }
            tally.recommend(0..arms)
        }
    };
    Ok(Some(tally.into_result(recommended)))
}

/// Runs a strategy with explicitly supplied per-arm streams.
///
/// `streams[k]` feeds arm `k`; callers that permute arms and streams together
/// observe a relabeled but otherwise identical run.
pub fn run_strategy_with_streams(
    config: &StrategyConfig,
    instance: &BanditInstance,
    budget: u64,
    streams: Vec<RngStream>,
) -> Result<RunResult> {
    if streams.len() != instance.arms() {
        return Err(Error::InvalidArgument(format!(
            "need one stream per arm: got {} streams for {} arms",
            streams.len(),
            instance.arms()
        )));
    }
    let mut source = SampledSource { means: instance.means(), streams };
    let result = run_with_source(config, instance.arms(), budget, &mut source)?;
    Ok(result.expect("sampled sources never run dry"))
}

/// Runs a strategy for `budget` pulls on `instance`.
///
/// Arm `k` draws from `rng.substream(k)`, so the reward table is a pure
/// function of the stream's identity and the outcome replays bit-for-bit.
pub fn run_strategy(
    config: &StrategyConfig,
    instance: &BanditInstance,
    budget: u64,
    rng: &RngStream,
) -> Result<RunResult> {
    let streams = (0..instance.arms()).map(|k| rng.substream(k as u64)).collect();
    run_strategy_with_streams(config, instance, budget, streams)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inst(means: &[f64]) -> BanditInstance {
        BanditInstance::new(means.to_vec()).unwrap()
    }

    #[test]
    fn sr_allocation_matches_hand_computed_schedules() {
        // logbar(3) = 4/3; n_1 = ceil(0.75 * 97/3) = 25, n_2 = ceil(0.75 * 97/2) = 37.
        assert_eq!(sr_allocation(3, 100).unwrap(), vec![25, 37]);
        // logbar(2) = 1; n_1 = ceil(48/2) = 24.
        assert_eq!(sr_allocation(2, 50).unwrap(), vec![24]);
        // Tight budget: raw value 0 is floored to one pull per arm.
        assert_eq!(sr_allocation(2, 2).unwrap(), vec![1]);
        assert!(matches!(
            sr_allocation(3, 2),
            Err(Error::BudgetTooSmall { budget: 2, min: 3, arms: 3 })
        ));
        assert!(sr_allocation(1, 10).is_err());
    }

    #[test]
    fn sr_allocation_is_non_decreasing_and_budget_feasible() {
        for arms in 2..=40usize {
            for budget in [arms as u64, 3 * arms as u64, 1000] {
                if budget < arms as u64 {
                    continue;
                }
                let ns = sr_allocation(arms, budget).unwrap();
                assert!(ns.windows(2).all(|w| w[0] <= w[1]));
                // Total pulls: K arms in phase 1, one fewer each phase.
                let mut total = 0u64;
                let mut prev = 0u64;
                for (j, &n) in ns.iter().enumerate() {
                    total += (arms - j) as u64 * (n - prev);
                    prev = n;
                }
                assert!(total <= budget, "K={arms} T={budget}: {total}");
            }
        }
    }

    #[test]
    fn sh_rounds_matches_hand_computed_schedules() {
        assert_eq!(
            sh_rounds(4, 40).unwrap(),
            vec![
                ShRound { survivors: 4, pulls_per_arm: 5 },
                ShRound { survivors: 2, pulls_per_arm: 10 },
            ]
        );
        assert_eq!(sh_rounds(2, 10).unwrap(), vec![ShRound { survivors: 2, pulls_per_arm: 5 }]);
        // Underfunded regime: budget-cap keeps the total at T = K.
        let schedule = sh_rounds(64, 64).unwrap();
        assert_eq!(schedule.len(), 6);
        assert_eq!(schedule[0], ShRound { survivors: 64, pulls_per_arm: 1 });
        assert!(schedule[1..].iter().all(|r| r.pulls_per_arm == 0));
        let total: u64 = schedule.iter().map(|r| r.survivors as u64 * r.pulls_per_arm).sum();
        assert_eq!(total, 64);
    }

    #[test]
    fn sh_survivor_counts_halve_down_to_a_final_pair() {
        for arms in 2..=64usize {
            let schedule = sh_rounds(arms, 10_000).unwrap();
            assert_eq!(schedule[0].survivors, arms);
            for w in schedule.windows(2) {
                assert_eq!(w[1].survivors, w[0].survivors.div_ceil(2));
            }
            assert_eq!(schedule.last().unwrap().survivors.div_ceil(2), 1);
            let total: u64 = schedule.iter().map(|r| r.survivors as u64 * r.pulls_per_arm).sum();
            assert!(total <= 10_000);
        }
    }

    #[test]
    fn uniform_splits_budget_with_round_robin_remainder() {
        let cfg = StrategyConfig::uniform();
        let run =
            run_strategy(&cfg, &inst(&[0.5, 0.4, 0.3, 0.2]), 10, &RngStream::new(1, 0)).unwrap();
        assert_eq!(run.pulls, vec![3, 3, 2, 2]);
        assert_eq!(run.pulls.iter().sum::<u64>(), 10);
    }

    #[test]
    fn uniform_tolerates_budgets_below_one_pull_per_arm() {
        let cfg = StrategyConfig::uniform();
        let run = run_strategy(&cfg, &inst(&[0.5, 0.4, 0.3]), 2, &RngStream::new(1, 0)).unwrap();
        assert_eq!(run.pulls, vec![1, 1, 0]);
        assert_eq!(run.empirical_means[2], 0.0);
        assert!(run.recommended < 3);
    }

    #[test]
    fn successive_rejects_run_matches_its_allocation() {
        let cfg = StrategyConfig::successive_rejects();
        let run = run_strategy(&cfg, &inst(&[0.5, 0.4, 0.3]), 100, &RngStream::new(7, 0)).unwrap();
        let mut pulls = run.pulls.clone();
        pulls.sort_unstable();
        // First-rejected arm: exactly n_1 = 25; the other two: n_2 = 37.
        assert_eq!(pulls, vec![25, 37, 37]);
        assert_eq!(run.pulls[run.recommended], 37);
        assert_eq!(run.pulls.iter().sum::<u64>(), 99);
    }

    #[test]
    fn elimination_strategies_reject_budgets_below_one_sweep() {
        for cfg in [
            StrategyConfig::successive_rejects(),
            StrategyConfig::successive_halving(),
            StrategyConfig::ucb_e(1.0),
        ] {
            let err = run_strategy(&cfg, &inst(&[0.5, 0.4, 0.3]), 2, &RngStream::new(0, 0));
            assert!(matches!(err, Err(Error::BudgetTooSmall { min: 3, .. })), "{cfg:?}");
        }
    }

    #[test]
    fn ucb_e_pulls_every_arm_before_using_indices() {
        let cfg = StrategyConfig::ucb_e(2.0);
        let run = run_strategy(&cfg, &inst(&[0.9, 0.5, 0.1]), 3, &RngStream::new(3, 0)).unwrap();
        assert_eq!(run.pulls, vec![1, 1, 1]);
    }

    #[test]
    fn ucb_e_focuses_pulls_with_small_exploration() {
        // Tiny a: after the first sweep the index is dominated by the mean,
        // so pulls concentrate. The top arm must take the bulk of the budget.
        let cfg = StrategyConfig::ucb_e(0.01);
        let run = run_strategy(&cfg, &inst(&[0.9, 0.2, 0.1]), 300, &RngStream::new(5, 0)).unwrap();
        assert!(run.pulls[0] > 200, "pulls = {:?}", run.pulls);
        assert_eq!(run.recommended, 0);
    }

    #[test]
    fn config_validation_enforces_exploration_parameter_rules() {
        assert!(matches!(
            StrategyConfig { kind: StrategyKind::UcbE, exploration_a: None }.validate(),
            Err(Error::MissingExploration)
        ));
        assert!(matches!(
            StrategyConfig { kind: StrategyKind::UcbE, exploration_a: Some(-1.0) }.validate(),
            Err(Error::MissingExploration)
        ));
        assert!(matches!(
            StrategyConfig { kind: StrategyKind::Uniform, exploration_a: Some(1.0) }.validate(),
            Err(Error::UnexpectedExploration)
        ));
        assert!(StrategyConfig::ucb_e(176.0).validate().is_ok());
    }

    #[test]
    fn config_parses_json_with_optional_exploration_field() {
        let cfg: StrategyConfig = serde_json::from_str(r#"{"kind":"ucb_e","a":176.0}"#).unwrap();
        assert_eq!(cfg, StrategyConfig::ucb_e(176.0));
        let cfg: StrategyConfig = serde_json::from_str(r#"{"kind":"uniform"}"#).unwrap();
        assert_eq!(cfg, StrategyConfig::uniform());
        assert_eq!(serde_json::to_string(&cfg).unwrap(), r#"{"kind":"uniform"}"#);
    }

    #[test]
    fn default_exploration_matches_documented_formula() {
        let a = ucb_e_default_a(100, 4, 32.0).unwrap();
        assert!((a - 25.0 / 36.0 * 3.0).abs() < 1e-12);
        assert!(ucb_e_default_a(4, 4, 32.0).is_err());
        assert!(ucb_e_default_a(100, 4, 0.0).is_err());
    }

    #[test]
    fn identical_seeds_replay_identical_runs() {
        let instance = inst(&[0.5, 0.45, 0.3, 0.2]);
        for cfg in [
            StrategyConfig::uniform(),
            StrategyConfig::successive_rejects(),
            StrategyConfig::successive_halving(),
            StrategyConfig::ucb_e(3.0),
        ] {
            let a = run_strategy(&cfg, &instance, 200, &RngStream::new(42, 9)).unwrap();
            let b = run_strategy(&cfg, &instance, 200, &RngStream::new(42, 9)).unwrap();
            assert_eq!(a, b, "{cfg:?}");
        }
    }

    #[test]
    fn ties_break_toward_the_lowest_arm_index() {
        // Deterministic rewards: all-one and all-zero instances force exact
        // ties in every comparison a strategy makes.
        for means in [[1.0, 1.0, 1.0], [0.0, 0.0, 0.0]] {
            for cfg in [
                StrategyConfig::uniform(),
                StrategyConfig::successive_rejects(),
                StrategyConfig::successive_halving(),
                StrategyConfig::ucb_e(1.0),
            ] {
                let run = run_strategy(&cfg, &inst(&means), 30, &RngStream::new(0, 0)).unwrap();
                assert_eq!(run.recommended, 0, "{cfg:?} on {means:?}");
            }
        }
    }

    #[test]
    fn permuting_arms_and_streams_permutes_the_recommendation() {
        // A relabeled instance fed with relabeled streams must produce the
        // relabeled run, provided no decision-relevant tie occurs (these
        // fixed seeds avoid ties; determinism makes the check stable).
        let means = [0.9, 0.5, 0.15];
        let perm = [2usize, 0, 1]; // new position of each original arm
        let root = RngStream::new(31337, 0);
        let instance = inst(&means);
        let mut permuted_means = [0.0; 3];
        for (k, &to) in perm.iter().enumerate() {
            permuted_means[to] = means[k];
        }
        let permuted_instance = inst(&permuted_means);

        for cfg in [
            StrategyConfig::uniform(),
            StrategyConfig::successive_rejects(),
            StrategyConfig::successive_halving(),
            StrategyConfig::ucb_e(2.0),
        ] {
            for seed_index in 0..10u64 {
                let base: Vec<RngStream> =
                    (0..3).map(|k| root.substream(seed_index * 3 + k)).collect();
                let mut permuted = base.clone();
                for (k, &to) in perm.iter().enumerate() {
                    permuted[to] = base[k].clone();
                }
                let plain = run_strategy_with_streams(&cfg, &instance, 60, base.clone()).unwrap();
                let relabeled =
                    run_strategy_with_streams(&cfg, &permuted_instance, 60, permuted).unwrap();
                assert_eq!(
                    relabeled.recommended, perm[plain.recommended],
                    "{cfg:?} seed {seed_index}"
                );
                for (k, &to) in perm.iter().enumerate() {
                    assert_eq!(relabeled.pulls[to], plain.pulls[k]);
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn runs_respect_budget_and_recommend_a_real_arm(
            seed in any::<u64>(),
            arms in 2usize..10,
            budget_factor in 1u64..20,
            kind_pick in 0usize..4,
        ) {
            let budget = arms as u64 * budget_factor;
            let cfg = match StrategyKind::ALL[kind_pick] {
                StrategyKind::UcbE => StrategyConfig::ucb_e(1.5),
                kind => StrategyConfig { kind, exploration_a: None },
            };
            let means: Vec<f64> = (0..arms).map(|k| 0.5 - 0.4 * k as f64 / arms as f64).collect();
            let instance = BanditInstance::new(means).unwrap();
            let run = run_strategy(&cfg, &instance, budget, &RngStream::new(seed, 0)).unwrap();
            prop_assert!(run.recommended < arms);
            prop_assert!(run.pulls.iter().sum::<u64>() <= budget);
            prop_assert_eq!(run.pulls.len(), arms);
            for k in 0..arms {
                prop_assert!((0.0..=1.0).contains(&run.empirical_means[k]));
            }
        }
    }
}
