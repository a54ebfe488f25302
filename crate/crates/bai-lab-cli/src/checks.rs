//! Deterministic verification suites behind `bai-lab verify`.
//!
//! Each suite turns one of the library's verifiers into a list of
//! [`CheckReport`]s. Given the same `--seed`, a suite's output is
//! byte-identical across runs and worker counts.

use anyhow::{bail, Result};

use bai_lab::theory::{
    pigeonhole_witness, verify_change_of_measure, verify_concentration, verify_markov_split,
    CheckReport, CheckStatus,
};
use bai_lab::{
    complexity_h_incl, derive_stream_seed, run_strategy, ucb_e_default_a, FlippedFamily, RngStream,
    StrategyConfig, StrategyKind,
};

/// Enumeration-based identities must hold to floating-point accuracy.
const CM_TOLERANCE: f64 = 1e-12;

pub const SUITES: [&str; 5] = ["com", "concentration", "markov", "pigeonhole", "all"];

pub fn run_suite(suite: &str, seed: u64) -> Result<Vec<CheckReport>> {
    let mut checks = Vec::new();
    match suite {
        "com" => com_suite(&mut checks)?,
        "concentration" => concentration_suite(&mut checks, seed)?,
        "markov" => markov_suite(&mut checks, seed)?,
        "pigeonhole" => pigeonhole_suite(&mut checks, seed)?,
        "all" => {
            com_suite(&mut checks)?;
            concentration_suite(&mut checks, seed)?;
            markov_suite(&mut checks, seed)?;
            pigeonhole_suite(&mut checks, seed)?;
        }
        other => bail!("unknown suite '{other}' (expected one of {})", SUITES.join(", ")),
    }
    Ok(checks)
}

fn report(
    name: String,
    pass: bool,
    lhs: f64,
    rhs: f64,
    tolerance: f64,
    seeds: Vec<u64>,
) -> CheckReport {
    CheckReport {
        name,
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        lhs,
        rhs,
        tolerance,
        seeds,
    }
}

/// Exhaustive change-of-measure identities: the probability of recommending
/// arm 0 under a flipped problem equals its reweighted expectation under the
/// base problem. Enumeration is exact, so no seed is involved.
fn com_suite(checks: &mut Vec<CheckReport>) -> Result<()> {
    let two = FlippedFamily::alpha(2, 1.0)?;
    for budget in 1..=8u64 {
        let r = verify_change_of_measure(&two, 1, &StrategyConfig::uniform(), budget)?;
        checks.push(report(
            format!("com_uniform_K2_T{budget}_i2"),
            r.abs_diff <= CM_TOLERANCE * r.lhs.max(1e-300)
                && (r.flip_mass - 1.0).abs() <= CM_TOLERANCE
                && (r.weighted_mass - 1.0).abs() <= CM_TOLERANCE,
            r.lhs,
            r.rhs,
            CM_TOLERANCE,
            vec![],
        ));
    }
    let three = FlippedFamily::alpha(3, 1.0)?;
    for i in [1usize, 2] {
        let r = verify_change_of_measure(&three, i, &StrategyConfig::successive_rejects(), 6)?;
        checks.push(report(
            format!("com_successive_rejects_K3_T6_i{}", i + 1),
            r.abs_diff <= CM_TOLERANCE * r.lhs.max(1e-300)
                && (r.flip_mass - 1.0).abs() <= CM_TOLERANCE
                && (r.weighted_mass - 1.0).abs() <= CM_TOLERANCE,
            r.lhs,
            r.rhs,
            CM_TOLERANCE,
            vec![],
        ));
    }
    Ok(())
}

/// Uniform KL-deviation event frequencies on the linear five-arm family.
/// The event holds with probability at least `5/6`; the pass threshold
/// backs that off by three binomial standard deviations at `R = 10^4`.
fn concentration_suite(checks: &mut Vec<CheckReport>, seed: u64) -> Result<()> {
    let family = FlippedFamily::alpha(5, 1.0)?;
    let reps = 10_000u64;
    let threshold = 5.0 / 6.0 - 3.0 * ((1.0 / 6.0) * (5.0 / 6.0) / reps as f64).sqrt();
    for i in 0..family.arms() {
        let cell_seed = derive_stream_seed(seed, i as u64);
        let freq = verify_concentration(&family, i, 200, reps, cell_seed)?;
        checks.push(report(
            format!("concentration_K5_T200_i{i}"),
            freq >= threshold,
            freq,
            threshold,
            0.0,
            vec![cell_seed],
        ));
    }
    Ok(())
}

/// Pull-count overshoot frequencies on the five-arm base problem: for each
/// strategy and arm, runs reaching six times the (seed-split) estimated mean
/// pull count must stay near the `1/6` Markov cap, in both split orders.
fn markov_suite(checks: &mut Vec<CheckReport>, seed: u64) -> Result<()> {
    let family = FlippedFamily::alpha(5, 1.0)?;
    let budget = 500u64;
    let reps = 20_000u64;
    let half = (reps / 2) as f64;
    let cap = 1.0 / 6.0 + 3.0 * ((1.0 / 6.0) * (5.0 / 6.0) / half).sqrt();
    let h_incl = complexity_h_incl(&family.instance(0)?)?;
    for (si, kind) in StrategyKind::ALL.iter().enumerate() {
        let config = match kind {
            StrategyKind::UcbE => StrategyConfig {
                kind: *kind,
                exploration_a: Some(ucb_e_default_a(budget, family.arms(), h_incl)?),
            },
            _ => StrategyConfig { kind: *kind, exploration_a: None },
        };
        let cell_seed = derive_stream_seed(seed, si as u64);
        for swap in [false, true] {
            let r = verify_markov_split(&config, &family, budget, reps, cell_seed, swap)?;
            let worst = r.frequencies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            checks.push(report(
                format!("markov_{}_K5_T500{}", kind.name(), if swap { "_swapped" } else { "" }),
                worst <= cap,
                worst,
                cap,
                0.0,
                vec![cell_seed],
            ));
        }
    }
    Ok(())
}

/// Pigeonhole witnesses on the eight-arm linear family at `T = 1000`:
/// every feasible allocation must expose both a worst-case-starved and a
/// spread-starved problem. Exercised on random allocations and on each
/// strategy's mean empirical allocation.
fn pigeonhole_suite(checks: &mut Vec<CheckReport>, seed: u64) -> Result<()> {
    let family = FlippedFamily::alpha(8, 1.0)?;
    let arms = family.arms();
    let budget = 1000u64;

    let mut rng = RngStream::new(seed, 0);
    let mut failures = 0u64;
    let trials = 1000u64;
    for _ in 0..trials {
        // Normalized exponentials: a random point on the simplex, scaled to
        // spend the budget exactly.
        let mut weights: Vec<f64> = (0..arms).map(|_| -(1.0 - rng.next_f64()).ln()).collect();
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w *= budget as f64 / total;
        }
        if pigeonhole_witness(&family, &weights, budget as f64).is_err() {
            failures += 1;
        }
    }
    checks.push(report(
        "pigeonhole_random_allocations_K8_T1000".into(),
        failures == 0,
        failures as f64,
        0.0,
        0.0,
        vec![seed],
    ));

    let h_incl = complexity_h_incl(&family.instance(0)?)?;
    let instance = family.instance(0)?;
    let runs = 500u64;
    for (si, kind) in StrategyKind::ALL.iter().enumerate() {
        let config = match kind {
            StrategyKind::UcbE => StrategyConfig {
                kind: *kind,
                exploration_a: Some(ucb_e_default_a(budget, arms, h_incl)?),
            },
            _ => StrategyConfig { kind: *kind, exploration_a: None },
        };
        let strategy_seed = derive_stream_seed(seed, 100 + si as u64);
        let mut mean_pulls = vec![0.0f64; arms];
        for r in 0..runs {
            let run = run_strategy(&config, &instance, budget, &RngStream::new(strategy_seed, r))?;
            for (m, &p) in mean_pulls.iter_mut().zip(&run.pulls) {
                *m += p as f64 / runs as f64;
            }
        }
        let spent: f64 = mean_pulls.iter().sum();
        let found = pigeonhole_witness(&family, &mean_pulls, budget as f64).is_ok();
        checks.push(report(
            format!("pigeonhole_{}_K8_T1000", kind.name()),
            found && spent <= budget as f64 + 1e-6,
            spent,
            budget as f64,
            0.0,
            vec![strategy_seed],
        ));
    }
    Ok(())
}
