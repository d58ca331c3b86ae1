//! The `run` subcommand: execute batches of solver runs and write traces.

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use rdex_core::{builtin_ids, builtin_problem, engine, RunConfig64, DEFAULT_EQ_TOL};

use crate::{resolve_out_dir, write_atomic};

#[derive(Debug, Clone, clap::Args)]
pub struct RunArgs {
    /// Problem id to solve (repeatable); defaults to every builtin
    #[arg(long = "problem", value_name = "ID")]
    pub problems: Vec<String>,
    /// Independent runs per problem
    #[arg(long, default_value_t = 30)]
    pub runs: usize,
    /// Master seed; run k of problem i derives substream (i << 32) | k
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Evaluation budget per run
    #[arg(long, default_value_t = 200_000)]
    pub max_fe: usize,
    #[arg(long, default_value_t = 100)]
    pub pop_size: usize,
    /// Evaluations between checkpoints; must divide the budget
    #[arg(long, default_value_t = 200)]
    pub checkpoint_interval: usize,
    /// Tolerance under which an equality constraint counts as satisfied
    #[arg(long, default_value_t = DEFAULT_EQ_TOL)]
    pub eq_tol: f64,
    /// Output directory (relative paths honor RDEX_OUT)
    #[arg(long, default_value = "runs")]
    pub out: PathBuf,
    /// Run jobs one after another instead of in parallel
    #[arg(long)]
    pub sequential: bool,
}

/// Batch parameters as written to `manifest.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub problems: Vec<String>,
    pub runs: usize,
    pub seed: u64,
    pub max_fe: usize,
    pub pop_size: usize,
    pub checkpoint_interval: usize,
    pub eq_tol: f64,
    /// Checkpoints per trace (`max_fe / checkpoint_interval`).
    pub trace_len: usize,
}

pub fn cmd_run(args: &RunArgs) -> Result<()> {
    if args.runs == 0 {
        bail!("--runs must be at least 1");
    }
    let all = builtin_ids();
    let ids: Vec<String> = if args.problems.is_empty() {
        all.iter().map(|s| s.to_string()).collect()
    } else {
        for id in &args.problems {
            if !all.contains(&id.as_str()) {
                bail!("unknown problem '{id}'; builtins are: {}", all.join(", "));
            }
        }
        let mut seen = Vec::new();
        for id in &args.problems {
            if seen.contains(id) {
                bail!("problem '{id}' given more than once");
            }
            seen.push(id.clone());
        }
        seen
    };

    let out = resolve_out_dir(&args.out);
    fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;

    // one job per (problem, run); the substream id makes each run's
    // randomness independent of scheduling order
    let jobs: Vec<(u64, String, usize)> = ids
        .iter()
        .flat_map(|id| {
            let pidx = all.iter().position(|b| b == id).expect("validated above") as u64;
            (0..args.runs).map(move |k| (pidx, id.clone(), k))
        })
        .collect();

    let work = |(pidx, id, k): &(u64, String, usize)| -> Result<()> {
        let problem = builtin_problem::<f64>(id).expect("validated above");
        let config = RunConfig64 {
            population_size: args.pop_size,
            max_fe: args.max_fe,
            checkpoint_interval: args.checkpoint_interval,
            seed: args.seed,
            substream: (pidx << 32) | *k as u64,
            eq_tol: args.eq_tol,
            variation: Default::default(),
        };
        let trace = engine::run(&problem, &config).map_err(|e| anyhow!("{id} run {k}: {e}"))?;
        let mut csv = Vec::new();
        trace.write_csv(&mut csv)?;
        write_atomic(&out.join(format!("{id}_run{k}.csv")), &csv)?;
        let mut final_csv = Vec::new();
        trace.write_final_population_csv(&mut final_csv)?;
        write_atomic(&out.join(format!("{id}_run{k}.final.csv")), &final_csv)?;
        Ok(())
    };
    if args.sequential {
        jobs.iter().try_for_each(work)?;
    } else {
        jobs.par_iter().try_for_each(work)?;
    }

    let manifest = Manifest {
        problems: ids.clone(),
        runs: args.runs,
        seed: args.seed,
        max_fe: args.max_fe,
        pop_size: args.pop_size,
        checkpoint_interval: args.checkpoint_interval,
        eq_tol: args.eq_tol,
        trace_len: args.max_fe / args.checkpoint_interval,
    };
    let mut json = serde_json::to_vec_pretty(&manifest)?;
    json.push(b'\n');
    write_atomic(&out.join("manifest.json"), &json)?;

    println!(
        "wrote {} runs x {} problems to {}",
        args.runs,
        ids.len(),
        out.display()
    );
    Ok(())
}
