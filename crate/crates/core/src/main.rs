//! Command-line front-end: read a problem file, enclose every stationary
//! point of the formula inside the domain box, classify each one by surface
//! probes, run the pointwise Hessian comparison, and emit a text table plus
//! an optional JSON report.
//!
//! Exit status: 0 when every candidate received a definite verdict, 2 when
//! any candidate is undecided, 1 on any error (unreadable input, malformed
//! problem, unplaceable probes).

mod problem;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use extrema::{
    build_gradient_system, classify_all, hessian_verdict, solve_stationary, Expression, Interval,
    IntervalBox, ProbeConfig, SolveConfig,
};

use crate::problem::parse_problem;
use crate::report::{build_report, render_text, ReportInputs};

const ZERO_TOL_DEFAULT: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "extrema",
    version,
    about = "Locate and rigorously classify the stationary points of a smooth function on a box"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve and classify the problem described in FILE
    Classify {
        /// Problem file; see the README for the format
        file: PathBuf,
        /// Also write a JSON report to PATH
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Probe half-width for every candidate (overrides the problem file)
        #[arg(long, value_name = "E")]
        epsilon: Option<f64>,
        /// Probe rounds allowed after an undecided first attempt
        #[arg(long, value_name = "K")]
        retries: Option<usize>,
        /// Skip the pointwise Hessian comparison
        #[arg(long)]
        no_baseline: bool,
        /// Print evaluation counters and timing (timing also lands in the JSON)
        #[arg(long)]
        counters: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here too; only real usage mistakes
            // are errors. Exit 2 is reserved for "some candidate undecided".
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let Command::Classify {
        file,
        json,
        epsilon,
        retries,
        no_baseline,
        counters,
    } = cli.command;
    match run(&file, json, epsilon, retries, no_baseline, counters) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run(
    file: &PathBuf,
    json: Option<PathBuf>,
    epsilon_flag: Option<f64>,
    retries_flag: Option<usize>,
    no_baseline: bool,
    counters: bool,
) -> Result<ExitCode, String> {
    let text =
        fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let problem = parse_problem(&text).map_err(|e| format!("{}: {e}", file.display()))?;

    let expr = Expression::parse(&problem.formula, problem.dimension)
        .map_err(|e| format!("formula: {e}"))?;
    let sys = build_gradient_system(expr);
    let domain = IntervalBox::new(
        problem
            .domain
            .iter()
            .map(|&(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;

    let defaults = SolveConfig::default();
    let solve_cfg = SolveConfig {
        tol_x: problem.options.tol_x.unwrap_or(defaults.tol_x),
        max_boxes: problem.options.max_boxes.unwrap_or(defaults.max_boxes),
        ..defaults
    };
    let retry_limit = retries_flag
        .or(problem.options.retry_limit)
        .unwrap_or_else(|| ProbeConfig::default().retry_limit);
    let zero_tol = problem.options.zero_tol.unwrap_or(ZERO_TOL_DEFAULT);
    let effective_epsilon = epsilon_flag.or(problem.options.epsilon);

    let started = Instant::now();
    let outcome = solve_stationary(&sys, &domain, &solve_cfg).map_err(|e| e.to_string())?;

    let mut overrides = vec![None; outcome.candidates.len()];
    for &(index, eps) in &problem.options.epsilon_overrides {
        if index >= overrides.len() {
            return Err(format!(
                "epsilon[{index}] refers to a missing candidate ({} found)",
                overrides.len()
            ));
        }
        overrides[index] = Some(eps);
    }

    let probe_cfg = ProbeConfig {
        epsilon: effective_epsilon,
        retry_limit,
        ..ProbeConfig::default()
    };
    let classifications = classify_all(
        &sys,
        &outcome.candidates,
        &domain,
        &probe_cfg,
        Some(&overrides),
    );

    let baselines: Vec<_> = outcome
        .candidates
        .iter()
        .map(|cand| {
            if no_baseline {
                return None;
            }
            let mid = cand.enclosure.midpoint().ok()?;
            hessian_verdict(&sys, &mid, zero_tol).ok()
        })
        .collect();
    let timing_ms = counters.then(|| started.elapsed().as_secs_f64() * 1e3);

    let report = build_report(&ReportInputs {
        problem: &problem,
        tol_x: solve_cfg.tol_x,
        max_boxes: solve_cfg.max_boxes,
        retry_limit,
        zero_tol,
        epsilon: effective_epsilon,
        outcome: &outcome,
        classifications: &classifications,
        baselines: &baselines,
        timing_ms,
    });

    print!("{}", render_text(&report, counters));
    if let Some(path) = json {
        let body = serde_json::to_string_pretty(&report)
            .map_err(|e| format!("serializing report: {e}"))?;
        fs::write(&path, body + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
    }

    Ok(if report.totals.errors > 0 {
        ExitCode::from(1)
    } else if report.totals.undecided > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}
