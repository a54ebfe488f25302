//! `bai-lab`: a command-line laboratory for fixed-budget best-arm
//! identification.
//!
//! Subcommands:
//! - `complexity` — hardness measures of one bandit instance
//! - `simulate`   — Monte Carlo misidentification estimate for one cell
//! - `sweep`      — full strategy-by-budget grid from a config file, emitted
//!   as deterministic CSV/JSON artifacts
//! - `bounds`     — evaluate the theoretical error bounds at given parameters
//! - `verify`     — run the seeded verification suites
//!
//! Exit codes: 0 success, 1 usage/validation error (including failed verify
//! checks), 2 internal error (e.g. unwritable output directory).

mod checks;
mod config;
mod emit;

use std::collections::HashSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use bai_lab::theory::{eval_lower_bounds, eval_upper_bounds, CheckStatus, LowerBoundParams};
use bai_lab::{
    complexity_report, derive_stream_seed, estimate_error, sweep_family, BanditInstance,
    FamilySpec, StrategyConfig, StrategyKind, SweepRow,
};

use crate::config::ExperimentConfig;

#[derive(Parser)]
#[command(
    name = "bai-lab",
    version,
    about = "Fixed-budget best-arm identification laboratory",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    globals: GlobalArgs,
}

#[derive(Args)]
struct GlobalArgs {
    /// Experiment config file (JSON); required by `sweep`.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Master seed; every pseudo-random quantity derives from it.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,
    /// Rayon worker threads; the BAI_LAB_WORKERS environment variable
    /// overrides this flag. Defaults to the number of cores.
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,
    /// Output directory for sweep artifacts; overrides the config's out_dir.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Confidence level for interval estimates.
    #[arg(long, global = true, value_name = "FLOAT")]
    level: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the hardness measures of a bandit instance as JSON.
    Complexity(ComplexityArgs),
    /// Estimate one strategy's misidentification probability on one instance.
    Simulate(SimulateArgs),
    /// Run the full sweep described by --config and write CSV/JSON artifacts.
    Sweep,
    /// Evaluate the error bounds (log domain) at explicit parameters.
    Bounds(BoundsArgs),
    /// Run a verification suite and print one JSON report per check.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ComplexityArgs {
    /// Bandit instance as a JSON array of means, e.g. '[0.5,0.4,0.3]'.
    #[arg(long, value_name = "JSON")]
    instance: String,
}

#[derive(Args)]
struct SimulateArgs {
    /// Bandit instance as a JSON array of means.
    #[arg(long, value_name = "JSON", conflicts_with_all = ["family", "problem"])]
    instance: Option<String>,
    /// Flipped family, e.g. '{"type":"alpha","K":8,"alpha":1.0}'; use with --i.
    #[arg(long, value_name = "JSON", requires = "problem")]
    family: Option<String>,
    /// 1-based problem index within --family (1 = base problem ... K = last flip).
    #[arg(long = "i", value_name = "INDEX", requires = "family")]
    problem: Option<usize>,
    /// Strategy name: uniform | successive_rejects | successive_halving | ucb_e.
    #[arg(long, value_name = "NAME")]
    strategy: String,
    /// Exploration parameter for ucb_e.
    #[arg(long, value_name = "FLOAT")]
    a: Option<f64>,
    /// Budget: total number of pulls.
    #[arg(long = "T", value_name = "INT")]
    budget: u64,
    /// Number of Monte Carlo replications.
    #[arg(long = "R", value_name = "INT")]
    replications: u64,
}

#[derive(Args)]
struct BoundsArgs {
    /// Budget.
    #[arg(long = "T", value_name = "INT")]
    budget: u64,
    /// Number of arms.
    #[arg(long = "K", value_name = "INT")]
    arms: usize,
    /// Complexity cap `a` over the instance class (known-cap bounds).
    #[arg(long = "a", value_name = "FLOAT")]
    cap: Option<f64>,
    /// Complexity of the instance under study (adaptive lower bound; needs --a).
    #[arg(long = "H", value_name = "FLOAT")]
    h_instance: Option<f64>,
    /// Worst-problem family complexity H(1) (family-worst lower bound).
    #[arg(long = "H1", value_name = "FLOAT")]
    h_worst: Option<f64>,
    /// Per-problem family complexity H(i) (per-problem lower bound; needs --h-star).
    #[arg(long = "Hi", value_name = "FLOAT")]
    h_problem: Option<f64>,
    /// Family spread statistic h* (per-problem lower bound; needs --Hi).
    #[arg(long = "h-star", value_name = "FLOAT")]
    h_star: Option<f64>,
    /// Ranked complexity H2 (successive-rejects upper bound).
    #[arg(long = "H2", value_name = "FLOAT")]
    h2: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run: com | concentration | markov | pigeonhole | all.
    #[arg(long, value_name = "NAME", default_value = "all")]
    suite: String,
}

/// Failure classified by exit code: validation errors are the caller's to
/// fix (exit 1); internal errors are environmental (exit 2).
enum Failure {
    Validation(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<bai_lab::Error> for Failure {
    fn from(err: bai_lab::Error) -> Self {
        Failure::Validation(err.into())
    }
}

type CliResult<T> = Result<T, Failure>;

fn validation<T>(result: anyhow::Result<T>) -> CliResult<T> {
    result.map_err(Failure::Validation)
}

fn internal<T>(result: anyhow::Result<T>) -> CliResult<T> {
    result.map_err(Failure::Internal)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Validation(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    init_workers(&cli.globals)?;
    match cli.command {
        Command::Complexity(args) => cmd_complexity(args),
        Command::Simulate(args) => cmd_simulate(args, &cli.globals),
        Command::Sweep => cmd_sweep(&cli.globals),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Verify(args) => cmd_verify(args, &cli.globals),
    }
}

fn init_workers(globals: &GlobalArgs) -> CliResult<()> {
    let workers = match std::env::var("BAI_LAB_WORKERS") {
        Ok(value) => Some(validation(value.parse::<usize>().map_err(|err| {
            anyhow!("BAI_LAB_WORKERS must be a thread count, got '{value}': {err}")
        }))?),
        Err(std::env::VarError::NotPresent) => globals.workers,
        Err(err) => {
            return Err(Failure::Validation(anyhow!("BAI_LAB_WORKERS is not valid unicode: {err}")))
        }
    };
    if let Some(n) = workers {
        if n == 0 {
            return Err(Failure::Validation(anyhow!("worker count must be at least 1")));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|err| Failure::Internal(anyhow!("building thread pool: {err}")))?;
    }
    Ok(())
}

fn print_json<T: serde::Serialize>(value: &T) -> CliResult<()> {
    let text = internal(serde_json::to_string_pretty(value).context("serializing output"))?;
    println!("{text}");
    Ok(())
}

fn cmd_complexity(args: ComplexityArgs) -> CliResult<u8> {
    let instance: BanditInstance = validation(
        serde_json::from_str(&args.instance)
            .context("parsing --instance (expected a JSON array of means, e.g. '[0.5,0.4,0.3]')"),
    )?;
    let report = complexity_report(&instance)?;
    print_json(&report)?;
    Ok(0)
}

fn parse_strategy(name: &str) -> CliResult<StrategyKind> {
    StrategyKind::ALL.iter().copied().find(|k| k.name() == name).ok_or_else(|| {
        Failure::Validation(anyhow!(
            "unknown strategy '{name}' (expected uniform, successive_rejects, \
             successive_halving, or ucb_e)"
        ))
    })
}

fn cmd_simulate(args: SimulateArgs, globals: &GlobalArgs) -> CliResult<u8> {
    let instance = match (&args.instance, &args.family) {
        (Some(text), None) => validation(
            serde_json::from_str::<BanditInstance>(text)
                .context("parsing --instance (expected a JSON array of means)"),
        )?,
        (None, Some(text)) => {
            let spec: FamilySpec =
                validation(serde_json::from_str(text).context(
                    "parsing --family (e.g. '{\"type\":\"alpha\",\"K\":8,\"alpha\":1.0}')",
                ))?;
            let family = spec.build()?;
            let i = args.problem.expect("clap enforces --i with --family");
            if i == 0 || i > family.arms() {
                return Err(Failure::Validation(anyhow!(
                    "problem index --i must lie in 1..={}, got {i}",
                    family.arms()
                )));
            }
            family.instance(i - 1)?
        }
        _ => {
            return Err(Failure::Validation(anyhow!(
                "exactly one of --instance or --family (with --i) must be given"
            )))
        }
    };
    let config = StrategyConfig { kind: parse_strategy(&args.strategy)?, exploration_a: args.a };
    config.validate()?;
    let level = globals.level.unwrap_or(0.95);
    let seed = globals.seed.unwrap_or(0);
    let estimate = estimate_error(&config, &instance, args.budget, args.replications, level, seed)?;
    let log_point = estimate.log_point();
    let out = serde_json::json!({
        "strategy": config,
        "instance": instance,
        "T": args.budget,
        "seed": seed,
        "estimate": estimate,
        "log_point": log_point,
    });
    print_json(&out)?;
    Ok(0)
}

fn cmd_sweep(globals: &GlobalArgs) -> CliResult<u8> {
    let path = globals
        .config
        .as_ref()
        .ok_or_else(|| Failure::Validation(anyhow!("sweep needs --config PATH")))?;
    let text = validation(
        fs::read_to_string(path).with_context(|| format!("reading config {}", path.display())),
    )?;
    let mut config: ExperimentConfig = validation(
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display())),
    )?;
    if let Some(seed) = globals.seed {
        config.seed = seed;
    }
    if let Some(level) = globals.level {
        config.level = level;
    }
    if let Some(out) = &globals.out {
        config.out_dir = Some(out.clone());
    }
    validation(config.validate())?;
    let out_dir = config.out_dir.clone().ok_or_else(|| {
        Failure::Validation(anyhow!(
            "no output directory: set out_dir in the config or pass --out DIR"
        ))
    })?;
    internal(
        fs::create_dir_all(&out_dir)
            .with_context(|| format!("creating output directory {}", out_dir.display())),
    )?;

    let family = config.family.build()?;
    // Each strategy gets its own derived seed, so results do not depend on
    // which other strategies share the config.
    let mut all_rows: Vec<SweepRow> = Vec::new();
    let mut plots: Vec<(String, Vec<SweepRow>)> = Vec::new();
    let mut used_names: HashSet<String> = HashSet::new();
    for (si, strategy) in config.strategies.iter().enumerate() {
        let strategy_seed = derive_stream_seed(config.seed, si as u64);
        let rows = sweep_family(
            strategy,
            &family,
            &config.t_grid,
            config.replications,
            config.level,
            strategy_seed,
        )?;
        let mut stem = format!("plot_{}", strategy.kind.name());
        if !used_names.insert(stem.clone()) {
            stem = format!("plot_{}_{si}", strategy.kind.name());
            used_names.insert(stem.clone());
        }
        plots.push((stem, rows.clone()));
        all_rows.extend(rows);
    }

    let results_path = out_dir.join("results.csv");
    internal(emit::write_results_csv(&results_path, &all_rows))?;
    for (stem, rows) in &plots {
        internal(emit::write_plot_csv(&out_dir.join(format!("{stem}.csv")), &family, rows))?;
    }
    internal(emit::write_metadata(&out_dir.join("metadata.json"), &config, &family))?;

    let cells: usize = all_rows.iter().map(|r| r.per_problem.len()).sum();
    println!(
        "wrote {cells} cells for {} strategies x {} budgets x {} problems to {}",
        config.strategies.len(),
        config.t_grid.len(),
        family.arms(),
        out_dir.display()
    );
    Ok(0)
}

fn cmd_bounds(args: BoundsArgs) -> CliResult<u8> {
    // Bounds are evaluated with placeholder parameters and then filtered to
    // the ones whose inputs were actually supplied.
    let params = LowerBoundParams {
        budget: args.budget,
        arms: args.arms,
        cap: args.cap.unwrap_or(1.0),
        h_instance: args.h_instance.unwrap_or(1.0),
        h_worst: args.h_worst.unwrap_or(1.0),
        h_problem: args.h_problem.unwrap_or(1.0),
        h_star: args.h_star.unwrap_or(1.0),
    };
    let keep_lower = |name: &str| match name {
        "lb_known_cap" => args.cap.is_some(),
        "lb_adaptive_cap" => args.cap.is_some() && args.h_instance.is_some(),
        "lb_family_worst" => args.h_worst.is_some(),
        "lb_family_per_problem" => args.h_problem.is_some() && args.h_star.is_some(),
        _ => false,
    };
    let lower: Vec<_> =
        eval_lower_bounds(&params)?.into_iter().filter(|b| keep_lower(&b.name)).collect();

    let mut upper = Vec::new();
    if args.cap.is_some() || args.h2.is_some() {
        for bound in eval_upper_bounds(
            args.budget,
            args.arms,
            args.cap.unwrap_or(1.0),
            args.h2.unwrap_or(1.0),
        )? {
            let keep = match bound.name.as_str() {
                "ub_known_cap" => args.cap.is_some(),
                "ub_successive_rejects" => args.h2.is_some(),
                _ => false,
            };
            if keep {
                upper.push(bound);
            }
        }
    }
    if lower.is_empty() && upper.is_empty() {
        return Err(Failure::Validation(anyhow!(
            "no bound selected: supply --a (known-cap), --a with --H (adaptive), \
             --H1 (family worst), --Hi with --h-star (per problem), or --H2 \
             (successive-rejects upper bound)"
        )));
    }
    let out = serde_json::json!({
        "T": args.budget,
        "K": args.arms,
        "lower": lower,
        "upper": upper,
    });
    print_json(&out)?;
    Ok(0)
}

fn cmd_verify(args: VerifyArgs, globals: &GlobalArgs) -> CliResult<u8> {
    let seed = globals.seed.unwrap_or(0);
    let reports = checks::run_suite(&args.suite, seed).map_err(Failure::Validation)?;
    print_json(&reports)?;
    let failed = reports.iter().filter(|r| r.status == CheckStatus::Fail).count();
    if failed > 0 {
        eprintln!("{failed} of {} checks failed", reports.len());
        Ok(1)
    } else {
        Ok(0)
    }
}
