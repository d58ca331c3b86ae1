//! Nonparametric comparison statistics (f64).
//!
//! Rank-sum testing with midranks, tie-corrected normal approximation and
//! continuity correction; Holm step-down correction; the Friedman test; the
//! Vargha-Delaney effect size; and an approximate score-tournament summary.
//! These operate on per-run metric values where smaller is better.

use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Outcome of a pairwise comparison from the first sample's point of view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Outcome {
    Win,
    Tie,
    Loss,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // pad() keeps width/alignment specifiers working in tables
        f.pad(match self {
            Outcome::Win => "W",
            Outcome::Tie => "T",
            Outcome::Loss => "L",
        })
    }
}

/// Ranks with ties sharing their average rank (1-based).
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).expect("finite values"));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j < n && values[order[j]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + 1 + j) as f64 / 2.0;
        for k in i..j {
            ranks[order[k]] = avg;
        }
        i = j;
    }
    ranks
}

fn require_finite(values: &[f64], what: &str) -> Result<()> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::argument(format!("{what} must be finite")));
    }
    Ok(())
}

/// Two-sided Wilcoxon rank-sum test of `a` against `b` at level `alpha`.
///
/// Uses midranks, the tie-corrected normal approximation and a 0.5
/// continuity correction. Returns the p-value and the outcome for `a`:
/// a win means significantly smaller values. Two identical samples are a
/// tie with p = 1.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64], alpha: f64) -> Result<(f64, Outcome)> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::argument("rank-sum test needs at least two values per sample"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::argument("alpha must lie strictly between 0 and 1"));
    }
    require_finite(a, "sample values")?;
    require_finite(b, "sample values")?;

    let n = a.len() as f64;
    let m = b.len() as f64;
    let combined: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = midranks(&combined);
    let r_a: f64 = ranks[..a.len()].iter().sum();
    let u_a = r_a - n * (n + 1.0) / 2.0;
    let mean_u = n * m / 2.0;

    // tie correction over the pooled sample
    let mut sorted = combined.clone();
    sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut tie_sum = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        tie_sum += t * t * t - t;
        i = j;
    }
    let nn = n + m;
    let var_u = n * m / 12.0 * ((nn + 1.0) - tie_sum / (nn * (nn - 1.0)));
    if var_u <= 0.0 {
        // every pooled value identical: nothing to distinguish
        return Ok((1.0, Outcome::Tie));
    }

    let diff = u_a - mean_u;
    let corrected = if diff > 0.0 {
        diff - 0.5
    } else if diff < 0.0 {
        diff + 0.5
    } else {
        0.0
    };
    let z = corrected / var_u.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    let p = (2.0 * normal.cdf(-z.abs())).min(1.0);

    let outcome = if p < alpha {
        if u_a < mean_u {
            Outcome::Win
        } else {
            Outcome::Loss
        }
    } else {
        Outcome::Tie
    };
    Ok((p, outcome))
}

/// Holm step-down correction: flags, per input p-value, whether it stays
/// significant at family level `alpha`.
pub fn holm_correct(pvals: &[f64], alpha: f64) -> Result<Vec<bool>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::argument("alpha must lie strictly between 0 and 1"));
    }
    if pvals.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::argument("p-values must lie in [0, 1]"));
    }
    let k = pvals.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| pvals[i].partial_cmp(&pvals[j]).unwrap());
    let mut significant = vec![false; k];
    for (step, &idx) in order.iter().enumerate() {
        if pvals[idx] < alpha / (k - step) as f64 {
            significant[idx] = true;
        } else {
            break; // everything less extreme is not significant either
        }
    }
    Ok(significant)
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct FriedmanResult {
    pub chi2: f64,
    pub df: usize,
    pub p_value: f64,
    pub average_ranks: Vec<f64>,
}

/// Friedman test on a problems-by-algorithms matrix of metric medians
/// (smaller is better). Rows are ranked with midranks.
pub fn friedman(medians: &[Vec<f64>]) -> Result<FriedmanResult> {
    let n = medians.len();
    if n < 2 {
        return Err(Error::argument("Friedman test needs at least two problems"));
    }
    let k = medians[0].len();
    if k < 2 {
        return Err(Error::argument("Friedman test needs at least two algorithms"));
    }
    if medians.iter().any(|row| row.len() != k) {
        return Err(Error::argument("Friedman matrix rows must have equal length"));
    }
    for row in medians {
        require_finite(row, "Friedman medians")?;
    }

    let mut rank_sums = vec![0.0; k];
    for row in medians {
        for (j, r) in midranks(row).into_iter().enumerate() {
            rank_sums[j] += r;
        }
    }
    let average_ranks: Vec<f64> = rank_sums.iter().map(|s| s / n as f64).collect();
    let center = (k as f64 + 1.0) / 2.0;
    let spread: f64 = average_ranks.iter().map(|r| (r - center) * (r - center)).sum();
    let chi2 = 12.0 * n as f64 / (k as f64 * (k as f64 + 1.0)) * spread;
    let df = k - 1;
    let dist = ChiSquared::new(df as f64).expect("positive degrees of freedom");
    let p_value = dist.sf(chi2);
    Ok(FriedmanResult {
        chi2,
        df,
        p_value,
        average_ranks,
    })
}

/// Vargha-Delaney A12: probability that a value drawn from `b` exceeds one
/// drawn from `a`, ties counted half. For minimization, 1.0 means `a` is
/// stochastically better everywhere; 0.5 means no effect.
pub fn vargha_delaney_a12(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::argument("effect size needs non-empty samples"));
    }
    require_finite(a, "sample values")?;
    require_finite(b, "sample values")?;
    let mut favorable = 0.0;
    for &ai in a {
        for &bi in b {
            if bi > ai {
                favorable += 1.0;
            } else if bi == ai {
                favorable += 0.5;
            }
        }
    }
    Ok(favorable / (a.len() as f64 * b.len() as f64))
}

/// Median with the lower middle taken for even counts.
pub fn median_lower(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::argument("median of an empty sample"));
    }
    require_finite(values, "median input")?;
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(sorted[(sorted.len() - 1) / 2])
}

/// Disclaimer attached to every score-tournament report.
pub const USCORE_NOTE: &str =
    "approximate score tournament (unit weights for speed/accuracy/constraint); \
     not the official implementation";

/// Per-problem run summaries for one algorithm in the score tournament.
#[derive(Debug, Clone)]
pub struct UscoreProblemRuns {
    /// 1-based time-to-target per run; `trace_len + 1` means never.
    pub ttt: Vec<usize>,
    /// Penalized final quality per run.
    pub final_q: Vec<f64>,
    /// Final aggregated violation per run (0 = feasible).
    pub final_cv: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct UscoreInput {
    pub name: String,
    pub problems: Vec<UscoreProblemRuns>,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct ScoreRow {
    pub name: String,
    pub speed: f64,
    pub accuracy: f64,
    pub constraint: f64,
    pub total: f64,
}

/// Approximate score tournament over a set of algorithms.
///
/// Speed credits earlier target hits (`trace_len + 1 - ttt` per run);
/// accuracy awards rank points (`k - rank`, midranks) on per-problem median
/// final quality; constraint counts runs that ended feasible. The total adds
/// the three with unit weights — see [`USCORE_NOTE`].
pub fn uscore_report(algorithms: &[UscoreInput], trace_len: usize) -> Result<Vec<ScoreRow>> {
    if algorithms.is_empty() {
        return Err(Error::argument("score tournament needs at least one algorithm"));
    }
    let n_problems = algorithms[0].problems.len();
    if n_problems == 0 {
        return Err(Error::argument("score tournament needs at least one problem"));
    }
    for alg in algorithms {
        if alg.problems.len() != n_problems {
            return Err(Error::argument(format!(
                "'{}' covers {} problems, expected {n_problems}",
                alg.name,
                alg.problems.len()
            )));
        }
        for (p, runs) in alg.problems.iter().enumerate() {
            let r = runs.ttt.len();
            if r == 0 || runs.final_q.len() != r || runs.final_cv.len() != r {
                return Err(Error::argument(format!(
                    "'{}' problem {p}: inconsistent run vectors",
                    alg.name
                )));
            }
            let reference = algorithms[0].problems[p].ttt.len();
            if r != reference {
                return Err(Error::argument(format!(
                    "run-count mismatch on problem {p}: {r} vs {reference}"
                )));
            }
            if runs.ttt.iter().any(|&t| t == 0 || t > trace_len + 1) {
                return Err(Error::argument("time-to-target out of range"));
            }
        }
    }

    let k = algorithms.len();
    let mut rows: Vec<ScoreRow> = algorithms
        .iter()
        .map(|a| ScoreRow {
            name: a.name.clone(),
            speed: 0.0,
            accuracy: 0.0,
            constraint: 0.0,
            total: 0.0,
        })
        .collect();

    for (i, alg) in algorithms.iter().enumerate() {
        for runs in &alg.problems {
            rows[i].speed += runs
                .ttt
                .iter()
                .map(|&t| (trace_len + 1 - t) as f64)
                .sum::<f64>();
            rows[i].constraint += runs.final_cv.iter().filter(|&&cv| cv == 0.0).count() as f64;
        }
    }
    for p in 0..n_problems {
        let medians: Vec<f64> = algorithms
            .iter()
            .map(|a| median_lower(&a.problems[p].final_q))
            .collect::<Result<_>>()?;
        for (i, rank) in midranks(&medians).into_iter().enumerate() {
            rows[i].accuracy += k as f64 - rank;
        }
    }
    for row in &mut rows {
        row.total = row.speed + row.accuracy + row.constraint;
    }
    Ok(rows)
}
