use clap::Parser;

use rdex_cli::compare::{cmd_compare, CompareArgs};
use rdex_cli::eval::{cmd_eval, EvalArgs};
use rdex_cli::run::{cmd_run, RunArgs};

/// Budgeted constrained multiobjective solver and its batch tooling.
#[derive(Parser)]
#[command(name = "rdex", version)]
enum Cli {
    /// Solve builtin problems, writing one trace CSV per run
    Run(RunArgs),
    /// Score a directory of traces into eval.json and a summary table
    Eval(EvalArgs),
    /// Statistically compare two run directories
    Compare(CompareArgs),
}

fn main() {
    let result = match Cli::parse() {
        Cli::Run(args) => cmd_run(&args),
        Cli::Eval(args) => cmd_eval(&args),
        Cli::Compare(args) => cmd_compare(&args),
    };
    if let Err(e) = result {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
