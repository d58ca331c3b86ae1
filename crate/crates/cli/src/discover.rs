//! Locating and loading `<problem>_run<k>.csv` traces from a directory.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use anyhow::{bail, Context, Result};

use rdex_core::{RunTrace, RunTrace64};

/// One parsed trace plus the run index from its file name.
#[derive(Debug, Clone)]
pub struct LoadedTrace {
    pub run: usize,
    pub trace: RunTrace64,
}

/// All traces for one problem, sorted by run index.
#[derive(Debug, Clone)]
pub struct ProblemRuns {
    pub id: String,
    pub runs: Vec<LoadedTrace>,
}

/// A run directory's traces, grouped by problem id (sorted), with the
/// common checkpoint count.
#[derive(Debug, Clone)]
pub struct LoadedRuns {
    pub problems: Vec<ProblemRuns>,
    pub trace_len: usize,
}

impl LoadedRuns {
    pub fn problem_ids(&self) -> Vec<&str> {
        self.problems.iter().map(|p| p.id.as_str()).collect()
    }
}

/// Splits `<problem>_run<k>.csv` into its parts; `.final.csv` population
/// dumps and anything else return `None`.
pub fn parse_trace_name(name: &str) -> Option<(String, usize)> {
    let stem = name.strip_suffix(".csv")?;
    if stem.ends_with(".final") {
        return None;
    }
    let at = stem.rfind("_run")?;
    let (id, run) = stem.split_at(at);
    let run: usize = run["_run".len()..].parse().ok()?;
    if id.is_empty() {
        return None;
    }
    Some((id.to_string(), run))
}

/// Reads every trace in `dir`, requiring at least one and a uniform
/// checkpoint count across all of them.
pub fn load_run_dir(dir: &Path) -> Result<LoadedRuns> {
    let entries = std::fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))?;
    let mut by_problem: BTreeMap<String, Vec<LoadedTrace>> = BTreeMap::new();
    for entry in entries {
        let entry = entry?;
        let name = entry.file_name();
        let Some(name) = name.to_str() else { continue };
        let Some((id, run)) = parse_trace_name(name) else {
            continue;
        };
        let path = entry.path();
        let file = File::open(&path).with_context(|| format!("opening {}", path.display()))?;
        let trace = RunTrace::read_csv(BufReader::new(file), &path.display().to_string())?;
        by_problem.entry(id).or_default().push(LoadedTrace { run, trace });
    }
    if by_problem.is_empty() {
        bail!("no '<problem>_run<k>.csv' traces found in {}", dir.display());
    }

    let mut problems = Vec::with_capacity(by_problem.len());
    let mut len_witness: Option<(String, usize)> = None;
    for (id, mut runs) in by_problem {
        runs.sort_by_key(|r| r.run);
        for pair in runs.windows(2) {
            if pair[0].run == pair[1].run {
                bail!("{id}: run index {} appears twice", pair[0].run);
            }
        }
        for r in &runs {
            let len = r.trace.checkpoints.len();
            match &len_witness {
                None => len_witness = Some((format!("{id} run {}", r.run), len)),
                Some((who, expected)) if *expected != len => bail!(
                    "checkpoint count mismatch: {who} has {expected}, {id} run {} has {len}",
                    r.run
                ),
                _ => {}
            }
        }
        problems.push(ProblemRuns { id, runs });
    }
    let trace_len = len_witness.expect("at least one trace").1;
    Ok(LoadedRuns {
        problems,
        trace_len,
    })
}
