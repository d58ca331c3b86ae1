//! The `eval` subcommand: score every trace in a run directory.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use rdex_core::metrics::{
    final_quality, load_targets, median_target, penalty_base, time_to_target,
};

use crate::discover::{load_run_dir, ProblemRuns};
use crate::write_atomic;

#[derive(Debug, Clone, clap::Args)]
pub struct EvalArgs {
    /// Directory of `<problem>_run<k>.csv` traces (as written by `run`)
    pub dir: PathBuf,
    /// CSV of `problem_id,target_igd` rows; omitted targets are derived
    /// from the runs themselves (median finite final quality)
    #[arg(long, value_name = "FILE")]
    pub targets: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunEval {
    pub run: usize,
    /// Final-population distance indicator; `null` when the run never held a
    /// feasible point at the end.
    pub final_igd: Option<f64>,
    pub final_cv: f64,
    /// Penalized quality: the indicator when feasible, penalty base plus
    /// violation otherwise.
    pub final_q: f64,
    /// 1-based checkpoint index that first met the target feasibly;
    /// `trace_len + 1` means never.
    pub ttt: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemEval {
    pub id: String,
    pub penalty_base: f64,
    /// `null` when no run finished with a feasible point, so no target could
    /// be derived.
    pub target_igd: Option<f64>,
    /// "file" or "derived".
    pub target_source: String,
    pub runs: Vec<RunEval>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalReport {
    pub trace_len: usize,
    pub problems: Vec<ProblemEval>,
}

/// Final distance indicators, one per run; infinite marks an infeasible end.
pub fn final_igds(problem: &ProblemRuns) -> Vec<f64> {
    problem
        .runs
        .iter()
        .map(|r| r.trace.checkpoints.last().expect("non-empty trace").igd)
        .collect()
}

/// Derives a per-problem target from final indicators: the median of the
/// finite ones, or `None` when every run ended infeasible.
pub fn derive_target(finals: &[f64]) -> Option<f64> {
    median_target(finals).ok()
}

/// Scores one problem's runs against a target and penalty base.
pub fn score_runs(problem: &ProblemRuns, target: Option<f64>, b_p: f64) -> Vec<RunEval> {
    problem
        .runs
        .iter()
        .map(|r| {
            let last = r.trace.checkpoints.last().expect("non-empty trace");
            RunEval {
                run: r.run,
                final_igd: last.igd.is_finite().then_some(last.igd),
                final_cv: last.min_cv,
                final_q: final_quality(last.igd, last.min_cv, b_p),
                ttt: time_to_target(&r.trace, target.unwrap_or(f64::INFINITY)),
            }
        })
        .collect()
}

pub fn build_report(
    loaded: &crate::discover::LoadedRuns,
    targets_file: Option<&PathBuf>,
) -> Result<EvalReport> {
    let file_targets = match targets_file {
        Some(path) => {
            let specs = load_targets::<f64>(path)
                .with_context(|| format!("loading targets from {}", path.display()))?;
            for p in &loaded.problems {
                if !specs.iter().any(|t| t.problem_id == p.id) {
                    bail!("targets file has no entry for problem '{}'", p.id);
                }
            }
            Some(specs)
        }
        None => None,
    };

    let problems = loaded
        .problems
        .iter()
        .map(|p| {
            let finals = final_igds(p);
            let b_p = penalty_base(&finals);
            let (target, source) = match &file_targets {
                Some(specs) => {
                    let t = specs
                        .iter()
                        .find(|t| t.problem_id == p.id)
                        .expect("checked above");
                    (Some(t.target_igd), "file")
                }
                None => (derive_target(&finals), "derived"),
            };
            ProblemEval {
                id: p.id.clone(),
                penalty_base: b_p,
                target_igd: target,
                target_source: source.to_string(),
                runs: score_runs(p, target, b_p),
            }
        })
        .collect();
    Ok(EvalReport {
        trace_len: loaded.trace_len,
        problems,
    })
}

fn median(values: &[f64]) -> f64 {
    rdex_core::stats::median_lower(values).expect("non-empty scores")
}

pub fn render_text(report: &EvalReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<12} {:>4} {:>9} {:>12} {:>12} {:>8}  target\n",
        "problem", "runs", "feasible", "median igd", "median q", "med ttt"
    ));
    for p in &report.problems {
        let feasible = p.runs.iter().filter(|r| r.final_cv == 0.0).count();
        let qs: Vec<f64> = p.runs.iter().map(|r| r.final_q).collect();
        let ttts: Vec<f64> = p.runs.iter().map(|r| r.ttt as f64).collect();
        let finite: Vec<f64> = p.runs.iter().filter_map(|r| r.final_igd).collect();
        let med_igd = if finite.is_empty() {
            "inf".to_string()
        } else {
            format!("{:.6}", median(&finite))
        };
        let target = match p.target_igd {
            Some(t) => format!("{t:.6} ({})", p.target_source),
            None => "none".to_string(),
        };
        out.push_str(&format!(
            "{:<12} {:>4} {:>9} {:>12} {:>12.6} {:>8}  {}\n",
            p.id,
            p.runs.len(),
            feasible,
            med_igd,
            median(&qs),
            median(&ttts),
            target
        ));
    }
    out
}

pub fn cmd_eval(args: &EvalArgs) -> Result<()> {
    let loaded = load_run_dir(&args.dir)?;
    let report = build_report(&loaded, args.targets.as_ref())?;
    let mut json = serde_json::to_vec_pretty(&report)?;
    json.push(b'\n');
    write_atomic(&args.dir.join("eval.json"), &json)?;
    print!("{}", render_text(&report));
    println!("wrote {}", args.dir.join("eval.json").display());
    Ok(())
}
