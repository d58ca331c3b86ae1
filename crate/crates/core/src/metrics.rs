//! Quality metrics: inverted generational distance, penalized final quality
//! and time-to-target, plus target-file handling.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::trace::RunTrace;

/// Mean, over the reference front, of the Euclidean distance to the nearest
/// obtained point. Lower is better; zero means the front is covered.
pub fn igd<R: Real>(obtained: &[Vec<R>], reference: &[Vec<R>]) -> Result<R> {
    if obtained.is_empty() || reference.is_empty() {
        return Err(Error::argument("IGD needs non-empty point sets"));
    }
    let m = reference[0].len();
    if obtained.iter().any(|p| p.len() != m) || reference.iter().any(|p| p.len() != m) {
        return Err(Error::argument("IGD point sets must share the objective count"));
    }
    let mut total = R::zero();
    for r in reference {
        let mut best = R::infinity();
        for p in obtained {
            let mut acc = R::zero();
            for (&a, &b) in p.iter().zip(r) {
                let d = a - b;
                acc = acc + d * d;
            }
            let dist = acc.sqrt();
            if dist < best {
                best = dist;
            }
        }
        total = total + best;
    }
    Ok(total / R::from_usize(reference.len()).expect("set size fits scalar"))
}

/// Penalty base for a problem: one more than the largest finite final IGD
/// observed on it, or 1 when every run ended infeasible.
pub fn penalty_base<R: Real>(final_igds: &[R]) -> R {
    let max_finite = final_igds
        .iter()
        .copied()
        .filter(|v| v.is_finite())
        .fold(R::zero(), |a, b| a.max(b));
    max_finite + R::one()
}

/// Final quality of a run: its IGD when it ended feasible, otherwise the
/// penalty base plus its remaining violation (always worse than any feasible
/// run on the same problem).
pub fn final_quality<R: Real>(final_igd: R, final_cv: R, b_p: R) -> R {
    if final_cv <= R::zero() {
        final_igd
    } else {
        b_p + final_cv
    }
}

/// 1-based index of the first checkpoint that is feasible and at or below
/// `target_igd`; one past the trace length when no checkpoint qualifies.
pub fn time_to_target<R: Real>(trace: &RunTrace<R>, target_igd: R) -> usize {
    for (i, c) in trace.checkpoints.iter().enumerate() {
        if c.feasible_count > 0 && c.igd <= target_igd {
            return i + 1;
        }
    }
    trace.checkpoints.len() + 1
}

/// Median of the finite values, taking the lower middle for even counts.
/// Errors when nothing is finite: no target can be derived from a batch
/// that never produced a feasible result.
pub fn median_target<R: Real>(final_igds: &[R]) -> Result<R> {
    let mut finite: Vec<R> = final_igds.iter().copied().filter(|v| v.is_finite()).collect();
    if finite.is_empty() {
        return Err(Error::argument(
            "no finite final IGD values: target cannot be derived",
        ));
    }
    finite.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite values"));
    Ok(finite[(finite.len() - 1) / 2])
}

/// A per-problem IGD target, as stored in target files.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetSpec<R> {
    pub problem_id: String,
    pub target_igd: R,
}

/// Parses `problem_id,target_igd` lines; `#` comments and blanks ignored.
pub fn parse_targets<R: Real>(text: &str, source_name: &str) -> Result<Vec<TargetSpec<R>>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(Error::parse(
                source_name,
                line_no,
                format!("expected 'problem_id,target_igd', found {} fields", fields.len()),
            ));
        }
        let value: R = fields[1].parse().map_err(|_| {
            Error::parse(source_name, line_no, format!("bad target '{}'", fields[1]))
        })?;
        if !value.is_finite() || value < R::zero() {
            return Err(Error::parse(
                source_name,
                line_no,
                "targets must be finite and non-negative",
            ));
        }
        out.push(TargetSpec {
            problem_id: fields[0].to_string(),
            target_igd: value,
        });
    }
    if out.is_empty() {
        return Err(Error::Format(format!("{source_name}: no targets found")));
    }
    Ok(out)
}

pub fn load_targets<R: Real>(path: impl AsRef<Path>) -> Result<Vec<TargetSpec<R>>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_targets(&text, &path.display().to_string())
}
