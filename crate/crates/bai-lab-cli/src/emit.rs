//! Deterministic artifact emission: the sweep results table, plot-ready
//! worst-case curves with bound overlays, and run metadata.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

use bai_lab::theory::{eval_lower_bounds, eval_upper_bounds, LowerBoundParams};
use bai_lab::{complexity_h2, family_complexities, FlippedFamily, LogPoint, SweepRow};

use crate::config::ExperimentConfig;

/// Bit-exact header of the sweep results table. One row per
/// (strategy, budget, problem) cell; `i` is the 1-based problem index.
pub const RESULTS_HEADER: &str = "family_id,strategy,K,T,i,R,errors,p_hat,ci_low,ci_high,is_worst";

/// Header of the per-strategy plot table. Log-domain columns; empty cells
/// mark quantities undefined at that budget (zero-error estimates, upper
/// bounds at `T < K`).
pub const PLOT_HEADER: &str = "T,log_p_hat,log_ci_high,log_resolution,lb_known_cap,lb_adaptive_cap,lb_family_worst,lb_family_per_problem,ub_known_cap,ub_successive_rejects";

/// Scientific notation with 17 significant digits: enough to round-trip any
/// finite f64 exactly, so re-runs are byte-comparable.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_results_csv(path: &Path, rows: &[SweepRow]) -> Result<()> {
    let mut text = String::from(RESULTS_HEADER);
    text.push('\n');
    for row in rows {
        for (idx, est) in row.per_problem.iter().enumerate() {
            text.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                row.family_id,
                row.strategy,
                row.arms,
                row.budget,
                idx + 1,
                est.replications,
                est.errors,
                num(est.point),
                num(est.ci_low),
                num(est.ci_high),
                idx == row.worst_problem,
            ));
        }
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// One plot row per budget: the measured worst-problem log-error with its
/// upper confidence limit and Monte Carlo resolution, next to every bound
/// evaluated at the same budget. Bound parameters come from the family: the
/// complexity cap is `11 K^2` (every family complexity sits below it), the
/// worst-problem complexity is `h[0]`, the per-problem curve uses the
/// smallest flipped-problem complexity so it floors all problems at once,
/// and the ranked complexity is that of the base problem.
pub fn write_plot_csv(path: &Path, family: &FlippedFamily, rows: &[SweepRow]) -> Result<()> {
    let fc = family_complexities(family);
    let arms = family.arms();
    let cap = 11.0 * (arms * arms) as f64;
    let h_problem = fc.h[1..].iter().copied().fold(f64::INFINITY, f64::min);
    let h2 = complexity_h2(&family.instance(0)?)?;

    let mut text = String::from(PLOT_HEADER);
    text.push('\n');
    for row in rows {
        let worst = row.worst_error();
        let log_p = match worst.log_point() {
            LogPoint::Value(v) => num(v),
            LogPoint::BelowResolution { .. } => String::new(),
        };
        let lower = eval_lower_bounds(&LowerBoundParams {
            budget: row.budget,
            arms,
            cap,
            h_instance: fc.h[0],
            h_worst: fc.h[0],
            h_problem,
            h_star: fc.h_star,
        })?;
        let upper: Vec<String> = if row.budget >= arms as u64 {
            eval_upper_bounds(row.budget, arms, cap, h2)?.iter().map(|b| num(b.log_value)).collect()
        } else {
            vec![String::new(); 2]
        };
        text.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            row.budget,
            log_p,
            num(worst.ci_high.ln()),
            num((1.0 / worst.replications as f64).ln()),
            num(lower[0].log_value),
            num(lower[1].log_value),
            num(lower[2].log_value),
            num(lower[3].log_value),
            upper[0],
            upper[1],
        ));
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn write_metadata(
    path: &Path,
    config: &ExperimentConfig,
    family: &FlippedFamily,
) -> Result<()> {
    let meta = serde_json::json!({
        "family_id": family.label(),
        "arms": family.arms(),
        "config": config,
    });
    let mut text = serde_json::to_string_pretty(&meta).context("serializing metadata")?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use bai_lab::{sweep_family, StrategyConfig};

    fn sample_rows() -> (FlippedFamily, Vec<SweepRow>) {
        let family = FlippedFamily::alpha(3, 1.0).unwrap();
        let rows =
            sweep_family(&StrategyConfig::uniform(), &family, &[6, 12], 50, 0.95, 99).unwrap();
        (family, rows)
    }

    #[test]
    fn results_csv_has_exact_header_and_one_based_rows() {
        let (_, rows) = sample_rows();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("results.csv");
        write_results_csv(&path, &rows).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), RESULTS_HEADER);
        // 2 budgets x 3 problems
        assert_eq!(text.lines().count(), 1 + 6);
        let first = text.lines().nth(1).unwrap();
        assert!(first.starts_with("alpha_K3_a1,uniform,3,6,1,50,"));
        // exactly one worst-problem marker per (strategy, budget) block
        for row in &rows {
            let flagged = text
                .lines()
                .skip(1)
                .filter(|l| l.split(',').nth(3).unwrap() == row.budget.to_string())
                .filter(|l| l.ends_with("true"))
                .count();
            assert_eq!(flagged, 1);
        }
    }

    #[test]
    fn results_floats_round_trip_exactly() {
        let (_, rows) = sample_rows();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("results.csv");
        write_results_csv(&path, &rows).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let first = text.lines().nth(1).unwrap();
        let fields: Vec<&str> = first.split(',').collect();
        let p_hat: f64 = fields[7].parse().unwrap();
        assert_eq!(p_hat, rows[0].per_problem[0].point);
        let ci_high: f64 = fields[9].parse().unwrap();
        assert_eq!(ci_high, rows[0].per_problem[0].ci_high);
    }

    #[test]
    fn plot_csv_pairs_measurements_with_bound_columns() {
        let (family, rows) = sample_rows();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("plot.csv");
        write_plot_csv(&path, &family, &rows).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), PLOT_HEADER);
        assert_eq!(text.lines().count(), 1 + 2);
        for (row, line) in rows.iter().zip(text.lines().skip(1)) {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 10);
            // all four lower bounds and both upper bounds are non-positive logs
            for field in &fields[4..10] {
                let v: f64 = field.parse().unwrap();
                assert!(v <= 0.0, "{line}");
            }
            // bound columns are exact pass-throughs of the evaluators
            let fc = family_complexities(&family);
            let cap = 11.0 * 9.0;
            let lower = eval_lower_bounds(&LowerBoundParams {
                budget: row.budget,
                arms: 3,
                cap,
                h_instance: fc.h[0],
                h_worst: fc.h[0],
                h_problem: fc.h[1..].iter().copied().fold(f64::INFINITY, f64::min),
                h_star: fc.h_star,
            })
            .unwrap();
            for (col, bound) in fields[4..8].iter().zip(&lower) {
                assert_eq!(col.parse::<f64>().unwrap(), bound.log_value, "{}", bound.name);
            }
            let h2 = complexity_h2(&family.instance(0).unwrap()).unwrap();
            let upper = eval_upper_bounds(row.budget, 3, cap, h2).unwrap();
            for (col, bound) in fields[8..10].iter().zip(&upper) {
                assert_eq!(col.parse::<f64>().unwrap(), bound.log_value, "{}", bound.name);
            }
        }
    }

    #[test]
    fn re_emission_of_identical_rows_is_byte_identical() {
        let (family, rows) = sample_rows();
        let dir = tempfile::tempdir().unwrap();
        let first = dir.path().join("a.csv");
        let second = dir.path().join("b.csv");
        write_results_csv(&first, &rows).unwrap();
        write_results_csv(&second, &rows).unwrap();
        assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
        write_plot_csv(&first, &family, &rows).unwrap();
        write_plot_csv(&second, &family, &rows).unwrap();
        assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
    }

    #[test]
    fn plot_csv_blanks_upper_bounds_below_the_arm_count() {
        let family = FlippedFamily::alpha(4, 1.0).unwrap();
        let rows =
            sweep_family(&StrategyConfig::uniform(), &family, &[2, 8], 50, 0.95, 99).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("plot.csv");
        write_plot_csv(&path, &family, &rows).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let small = text.lines().nth(1).unwrap();
        assert!(small.ends_with(",,"), "T=2 < K=4 should blank the upper bounds: {small}");
        let large = text.lines().nth(2).unwrap();
        assert!(!large.ends_with(",,"), "T=8 >= K=4 should fill the upper bounds: {large}");
    }

    #[test]
    fn metadata_echoes_config_without_out_dir() {
        let (family, _) = sample_rows();
        let config: ExperimentConfig = serde_json::from_value(serde_json::json!({
            "family": {"type": "alpha", "K": 3, "alpha": 1.0},
            "strategies": [{"kind": "uniform"}],
            "t_grid": [6, 12],
            "replications": 50,
            "seed": 99,
            "out_dir": "/tmp/scratch"
        }))
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("metadata.json");
        write_metadata(&path, &config, &family).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["family_id"], "alpha_K3_a1");
        assert_eq!(v["arms"], 3);
        assert_eq!(v["config"]["seed"], 99);
        assert_eq!(v["config"]["level"], 0.95);
        assert!(v["config"].get("out_dir").is_none());
    }
}
