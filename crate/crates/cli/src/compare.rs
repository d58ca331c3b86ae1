//! The `compare` subcommand: paired statistics over two run directories.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use rdex_core::metrics::{final_quality, penalty_base, time_to_target};
use rdex_core::stats::{
    friedman, holm_correct, median_lower, uscore_report, vargha_delaney_a12, wilcoxon_rank_sum,
    FriedmanResult, Outcome, ScoreRow, UscoreInput, UscoreProblemRuns, USCORE_NOTE,
};

use crate::discover::{load_run_dir, LoadedRuns};
use crate::eval::{derive_target, final_igds};
use crate::write_atomic;

#[derive(Debug, Clone, clap::Args)]
pub struct CompareArgs {
    /// First run directory (the one wins/losses speak for)
    pub dir_a: PathBuf,
    /// Second run directory
    pub dir_b: PathBuf,
    /// Significance level for the rank-sum tests and Holm correction
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Also write the full report as JSON to this file
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

/// Per-run metric values for one problem under both configurations.
struct PairedProblem {
    id: String,
    q_a: Vec<f64>,
    q_b: Vec<f64>,
    ttt_a: Vec<usize>,
    ttt_b: Vec<usize>,
    cv_a: Vec<f64>,
    cv_b: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemComparison {
    pub id: String,
    pub median_a: f64,
    pub median_b: f64,
    pub p_value: f64,
    /// Outcome for the first directory at raw alpha.
    pub outcome_raw: Outcome,
    /// Outcome after Holm correction across problems.
    pub outcome_holm: Outcome,
    /// Probability a run from the second directory scores higher (worse);
    /// 0.5 is no effect, 1.0 means the first is better on every paired draw.
    pub a12: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricComparison {
    pub metric: String,
    pub per_problem: Vec<ProblemComparison>,
    pub wins_raw: usize,
    pub ties_raw: usize,
    pub losses_raw: usize,
    pub wins_holm: usize,
    pub ties_holm: usize,
    pub losses_holm: usize,
    pub median_a12: f64,
    pub friedman: FriedmanResult,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompareReport {
    pub dir_a: String,
    pub dir_b: String,
    pub alpha: f64,
    pub trace_len: usize,
    pub problems: Vec<String>,
    pub metrics: Vec<MetricComparison>,
    pub scores: Vec<ScoreRow>,
    pub score_note: String,
}

/// Rejects directory pairs whose runs are not directly comparable.
fn check_compatible(a: &LoadedRuns, b: &LoadedRuns) -> Result<()> {
    let ids_a = a.problem_ids();
    let ids_b = b.problem_ids();
    if ids_a != ids_b {
        let only_a: Vec<&&str> = ids_a.iter().filter(|i| !ids_b.contains(i)).collect();
        let only_b: Vec<&&str> = ids_b.iter().filter(|i| !ids_a.contains(i)).collect();
        bail!("problem sets differ (only in first: {only_a:?}; only in second: {only_b:?})");
    }
    for (pa, pb) in a.problems.iter().zip(&b.problems) {
        if pa.runs.len() != pb.runs.len() {
            bail!(
                "run counts differ on '{}': {} vs {}",
                pa.id,
                pa.runs.len(),
                pb.runs.len()
            );
        }
    }
    if a.trace_len != b.trace_len {
        bail!(
            "checkpoint counts differ: {} vs {}",
            a.trace_len,
            b.trace_len
        );
    }
    Ok(())
}

/// Builds per-problem paired metrics with pooled targets and penalty bases,
/// so both directories are scored on the same scale.
fn pair_problems(a: &LoadedRuns, b: &LoadedRuns) -> Vec<PairedProblem> {
    a.problems
        .iter()
        .zip(&b.problems)
        .map(|(pa, pb)| {
            let finals_a = final_igds(pa);
            let finals_b = final_igds(pb);
            let pooled: Vec<f64> = finals_a.iter().chain(&finals_b).copied().collect();
            let b_p = penalty_base(&pooled);
            let target = derive_target(&pooled).unwrap_or(f64::INFINITY);
            let score = |p: &crate::discover::ProblemRuns| {
                let mut q = Vec::new();
                let mut ttt = Vec::new();
                let mut cv = Vec::new();
                for r in &p.runs {
                    let last = r.trace.checkpoints.last().expect("non-empty trace");
                    q.push(final_quality(last.igd, last.min_cv, b_p));
                    ttt.push(time_to_target(&r.trace, target));
                    cv.push(last.min_cv);
                }
                (q, ttt, cv)
            };
            let (q_a, ttt_a, cv_a) = score(pa);
            let (q_b, ttt_b, cv_b) = score(pb);
            PairedProblem {
                id: pa.id.clone(),
                q_a,
                q_b,
                ttt_a,
                ttt_b,
                cv_a,
                cv_b,
            }
        })
        .collect()
}

fn compare_metric(
    metric: &str,
    values: &[(String, Vec<f64>, Vec<f64>)],
    alpha: f64,
) -> Result<MetricComparison> {
    let mut per_problem = Vec::with_capacity(values.len());
    let mut pvals = Vec::with_capacity(values.len());
    for (id, va, vb) in values {
        let (p, outcome) = wilcoxon_rank_sum(va, vb, alpha)?;
        let a12 = vargha_delaney_a12(va, vb)?;
        pvals.push(p);
        per_problem.push(ProblemComparison {
            id: id.clone(),
            median_a: median_lower(va)?,
            median_b: median_lower(vb)?,
            p_value: p,
            outcome_raw: outcome,
            outcome_holm: outcome, // adjusted below
            a12,
        });
    }
    let keep = holm_correct(&pvals, alpha)?;
    for (row, keep) in per_problem.iter_mut().zip(keep) {
        if !keep {
            row.outcome_holm = Outcome::Tie;
        }
    }

    let tally = |rows: &[ProblemComparison], pick: fn(&ProblemComparison) -> Outcome| {
        let w = rows.iter().filter(|r| pick(r) == Outcome::Win).count();
        let t = rows.iter().filter(|r| pick(r) == Outcome::Tie).count();
        let l = rows.iter().filter(|r| pick(r) == Outcome::Loss).count();
        (w, t, l)
    };
    let (wins_raw, ties_raw, losses_raw) = tally(&per_problem, |r| r.outcome_raw);
    let (wins_holm, ties_holm, losses_holm) = tally(&per_problem, |r| r.outcome_holm);

    let a12s: Vec<f64> = per_problem.iter().map(|r| r.a12).collect();
    let medians: Vec<Vec<f64>> = per_problem
        .iter()
        .map(|r| vec![r.median_a, r.median_b])
        .collect();
    Ok(MetricComparison {
        metric: metric.to_string(),
        per_problem,
        wins_raw,
        ties_raw,
        losses_raw,
        wins_holm,
        ties_holm,
        losses_holm,
        median_a12: median_lower(&a12s)?,
        friedman: friedman(&medians)?,
    })
}

pub fn build_report(
    a: &LoadedRuns,
    b: &LoadedRuns,
    dir_a: &str,
    dir_b: &str,
    alpha: f64,
) -> Result<CompareReport> {
    check_compatible(a, b)?;
    let paired = pair_problems(a, b);

    let q_values: Vec<(String, Vec<f64>, Vec<f64>)> = paired
        .iter()
        .map(|p| (p.id.clone(), p.q_a.clone(), p.q_b.clone()))
        .collect();
    let as_f64 = |v: &[usize]| v.iter().map(|&t| t as f64).collect::<Vec<f64>>();
    let ttt_values: Vec<(String, Vec<f64>, Vec<f64>)> = paired
        .iter()
        .map(|p| (p.id.clone(), as_f64(&p.ttt_a), as_f64(&p.ttt_b)))
        .collect();
    let metrics = vec![
        compare_metric("final quality", &q_values, alpha)?,
        compare_metric("time to target", &ttt_values, alpha)?,
    ];

    type Pick = fn(&PairedProblem) -> (Vec<usize>, Vec<f64>, Vec<f64>);
    let inputs = [
        (dir_a, (|p| (p.ttt_a.clone(), p.q_a.clone(), p.cv_a.clone())) as Pick),
        (dir_b, (|p| (p.ttt_b.clone(), p.q_b.clone(), p.cv_b.clone())) as Pick),
    ]
    .map(|(name, pick)| UscoreInput {
        name: name.to_string(),
        problems: paired
            .iter()
            .map(|p| {
                let (ttt, final_q, final_cv) = pick(p);
                UscoreProblemRuns {
                    ttt,
                    final_q,
                    final_cv,
                }
            })
            .collect(),
    });
    let scores = uscore_report(&inputs, a.trace_len)?;

    Ok(CompareReport {
        dir_a: dir_a.to_string(),
        dir_b: dir_b.to_string(),
        alpha,
        trace_len: a.trace_len,
        problems: paired.iter().map(|p| p.id.clone()).collect(),
        metrics,
        scores,
        score_note: USCORE_NOTE.to_string(),
    })
}

pub fn render_text(report: &CompareReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "comparing {} (first) vs {} (second), alpha = {}\n",
        report.dir_a, report.dir_b, report.alpha
    ));
    for m in &report.metrics {
        out.push_str(&format!("\n== {} ==\n", m.metric));
        out.push_str(&format!(
            "{:<12} {:>12} {:>12} {:>10} {:>4} {:>5} {:>6}\n",
            "problem", "median A", "median B", "p", "raw", "holm", "A12"
        ));
        for r in &m.per_problem {
            out.push_str(&format!(
                "{:<12} {:>12.6} {:>12.6} {:>10.4e} {:>4} {:>5} {:>6.3}\n",
                r.id, r.median_a, r.median_b, r.p_value, r.outcome_raw, r.outcome_holm, r.a12
            ));
        }
        out.push_str(&format!(
            "raw W/T/L = {}/{}/{}   holm W/T/L = {}/{}/{}   median A12 = {:.3}\n",
            m.wins_raw, m.ties_raw, m.losses_raw, m.wins_holm, m.ties_holm, m.losses_holm,
            m.median_a12
        ));
        out.push_str(&format!(
            "friedman: chi2 = {:.4}, df = {}, p = {:.4e}, mean ranks = {:?}\n",
            m.friedman.chi2, m.friedman.df, m.friedman.p_value, m.friedman.average_ranks
        ));
    }
    out.push_str(&format!("\n== scores ({}) ==\n", report.score_note));
    out.push_str(&format!(
        "{:<24} {:>8} {:>9} {:>11} {:>8}\n",
        "configuration", "speed", "accuracy", "constraint", "total"
    ));
    for s in &report.scores {
        out.push_str(&format!(
            "{:<24} {:>8} {:>9} {:>11} {:>8}\n",
            s.name, s.speed, s.accuracy, s.constraint, s.total
        ));
    }
    out
}

pub fn cmd_compare(args: &CompareArgs) -> Result<()> {
    let a = load_run_dir(&args.dir_a)
        .with_context(|| format!("loading {}", args.dir_a.display()))?;
    let b = load_run_dir(&args.dir_b)
        .with_context(|| format!("loading {}", args.dir_b.display()))?;
    let report = build_report(
        &a,
        &b,
        &args.dir_a.display().to_string(),
        &args.dir_b.display().to_string(),
        args.alpha,
    )?;
    print!("{}", render_text(&report));
    if let Some(path) = &args.json {
        let mut json = serde_json::to_vec_pretty(&report)?;
        json.push(b'\n');
        write_atomic(path, &json)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
