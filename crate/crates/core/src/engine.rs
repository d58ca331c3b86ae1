//! The evaluation-budgeted solver loop.
//!
//! Evaluations happen one individual at a time so the budget can cut a
//! generation anywhere; checkpoints fire on exact evaluation counts and
//! therefore may observe a half-merged population (parents plus the
//! offspring evaluated so far). The feasibility tolerance is refreshed once
//! per generation and shared by that generation's variation and selection.

use crate::epsilon::EpsilonSchedule;
use crate::error::{Error, Result};
use crate::fitness::assign_fitness;
use crate::individual::Individual;
use crate::metrics::igd;
use crate::problems::ProblemDefinition;
use crate::rng::RandomStream;
use crate::scalar::{real, Real};
use crate::selection::environmental_select;
use crate::trace::{Checkpoint, RunTrace};
use crate::variation::{make_offspring, VariationConfig};

/// Everything that determines a run besides the problem itself.
#[derive(Debug, Clone)]
pub struct RunConfig<R> {
    pub population_size: usize,
    pub max_fe: usize,
    pub checkpoint_interval: usize,
    /// Master seed; runs in a batch share it and differ by substream.
    pub seed: u64,
    /// Substream id, so batches can give every run independent randomness.
    pub substream: u64,
    /// Tolerance under which `|h| = 0` is considered satisfied.
    pub eq_tol: R,
    pub variation: VariationConfig<R>,
}

impl<R: Real> Default for RunConfig<R> {
    fn default() -> Self {
        RunConfig {
            population_size: 100,
            max_fe: 200_000,
            checkpoint_interval: 200,
            seed: 0,
            substream: 0,
            eq_tol: real(1e-4),
            variation: VariationConfig::default(),
        }
    }
}

impl<R: Real> RunConfig<R> {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 4 {
            return Err(Error::argument("population size must be at least 4"));
        }
        if self.checkpoint_interval == 0 || self.max_fe % self.checkpoint_interval != 0 {
            return Err(Error::argument(format!(
                "checkpoint interval {} must be positive and divide max_fe {}",
                self.checkpoint_interval, self.max_fe
            )));
        }
        if self.max_fe < self.population_size {
            return Err(Error::argument(
                "budget must cover at least the initial population",
            ));
        }
        if !(self.eq_tol >= R::zero()) {
            return Err(Error::argument("eq_tol must be >= 0"));
        }
        self.variation.validate()
    }
}

/// Quality snapshot of a set: IGD of its feasible nondominated members
/// against the reference front (infinite if none are feasible), the smallest
/// violation, and the feasible count.
pub fn population_igd_state<R: Real>(
    population: &[Individual<R>],
    reference_front: &[Vec<R>],
) -> Result<(R, R, usize)> {
    if population.is_empty() {
        return Err(Error::argument("cannot snapshot an empty population"));
    }
    let min_cv = population
        .iter()
        .map(|ind| ind.cv)
        .fold(R::infinity(), |a, b| a.min(b));
    let feasible: Vec<&Individual<R>> =
        population.iter().filter(|ind| ind.is_feasible()).collect();
    let feasible_count = feasible.len();
    if feasible_count == 0 {
        return Ok((R::infinity(), min_cv, 0));
    }
    let objs: Vec<Vec<R>> = feasible.iter().map(|ind| ind.f.clone()).collect();
    let kept = crate::dominance::nondominated_indices(&objs);
    let front: Vec<Vec<R>> = kept.into_iter().map(|i| objs[i].clone()).collect();
    let value = igd(&front, reference_front)?;
    Ok((value, min_cv, feasible_count))
}

/// One full budgeted run. Deterministic given problem, config and the
/// `(seed, substream)` pair inside the config.
pub fn run<R: Real>(problem: &ProblemDefinition<R>, config: &RunConfig<R>) -> Result<RunTrace<R>> {
    config.validate()?;
    let n = config.population_size;
    let mut stream = RandomStream::with_substream(config.seed, config.substream);
    let mut fe = 0usize;
    let mut checkpoints: Vec<Checkpoint<R>> =
        Vec::with_capacity(config.max_fe / config.checkpoint_interval);

    // initial population, evaluated one by one; checkpoints can fire here
    let mut population: Vec<Individual<R>> = Vec::with_capacity(n);
    for _ in 0..n {
        let x = problem.bounds().sample_uniform(&mut stream)?;
        let ind = problem.evaluate_individual(x, config.eq_tol)?;
        fe += 1;
        population.push(ind);
        checkpoint_if_due(&population, problem, fe, config, &mut checkpoints)?;
    }

    let schedule = EpsilonSchedule::from_initial_population(&population, config.max_fe)?;

    while fe < config.max_fe {
        let eps = schedule.epsilon_at(fe)?;
        let parent_table = assign_fitness(&population, eps)?;
        for (ind, &fit) in population.iter_mut().zip(&parent_table.fit) {
            ind.fitness = Some(fit);
        }
        let offspring = make_offspring(
            &population,
            &parent_table,
            fe,
            config.max_fe,
            &config.variation,
            &mut stream,
            problem.bounds(),
        )?;

        // grow the merged set one evaluation at a time; the budget can stop
        // a generation mid-way, dropping the never-evaluated offspring
        let mut merged = population;
        merged.reserve(offspring.len());
        for child in offspring {
            if fe == config.max_fe {
                break;
            }
            let evaluated = problem.evaluate_individual(child.x, config.eq_tol)?;
            fe += 1;
            merged.push(evaluated);
            checkpoint_if_due(&merged, problem, fe, config, &mut checkpoints)?;
        }

        let merged_table = assign_fitness(&merged, eps)?;
        for (ind, &fit) in merged.iter_mut().zip(&merged_table.fit) {
            ind.fitness = Some(fit);
        }
        let outcome = environmental_select(&merged, &merged_table, n, eps)?;
        population = outcome.survivors;
    }

    debug_assert_eq!(fe, config.max_fe);
    debug_assert_eq!(
        checkpoints.len(),
        config.max_fe / config.checkpoint_interval
    );
    Ok(RunTrace {
        checkpoints,
        final_population: population,
    })
}

fn checkpoint_if_due<R: Real>(
    current: &[Individual<R>],
    problem: &ProblemDefinition<R>,
    fe: usize,
    config: &RunConfig<R>,
    checkpoints: &mut Vec<Checkpoint<R>>,
) -> Result<()> {
    if fe % config.checkpoint_interval != 0 {
        return Ok(());
    }
    let (igd_value, min_cv, feasible_count) =
        population_igd_state(current, problem.reference_front())?;
    checkpoints.push(Checkpoint {
        fe,
        igd: igd_value,
        min_cv,
        feasible_count,
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{builtin_problem, RawEvaluation};
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Arc;

    fn small_config(seed: u64) -> RunConfig<f64> {
        RunConfig {
            population_size: 20,
            max_fe: 2_000,
            checkpoint_interval: 200,
            seed,
            substream: 0,
            ..RunConfig::default()
        }
    }

    #[test]
    fn config_validation() {
        let mut c = small_config(1);
        assert!(c.validate().is_ok());
        c.checkpoint_interval = 300; // does not divide 2000
        assert!(c.validate().is_err());
        c.checkpoint_interval = 0;
        assert!(c.validate().is_err());
        c = small_config(1);
        c.population_size = 3;
        assert!(c.validate().is_err());
        c = small_config(1);
        c.max_fe = 10; // smaller than the population
        c.checkpoint_interval = 10;
        assert!(c.validate().is_err());
    }

    #[test]
    fn trace_has_one_checkpoint_per_interval() {
        let problem = builtin_problem::<f64>("box-sphere").unwrap();
        let trace = run(&problem, &small_config(7)).unwrap();
        assert_eq!(trace.checkpoints.len(), 10);
        for (i, c) in trace.checkpoints.iter().enumerate() {
            assert_eq!(c.fe, (i + 1) * 200);
        }
        assert_eq!(trace.final_population.len(), 20);
        for ind in &trace.final_population {
            assert!(ind.is_evaluated());
            assert!(problem.bounds().contains(&ind.x));
        }
    }

    #[test]
    fn fe_accounting_is_exact() {
        // wrap a builtin evaluator with a counter
        let inner = builtin_problem::<f64>("line-shift").unwrap();
        let count = Arc::new(AtomicUsize::new(0));
        let c2 = Arc::clone(&count);
        let eval = Arc::new(move |x: &[f64]| -> RawEvaluation<f64> {
            c2.fetch_add(1, Ordering::Relaxed);
            let s: f64 = x[1..].iter().map(|v| v * v).sum();
            RawEvaluation {
                objectives: vec![x[0], 1.0 - x[0] + s],
                inequalities: vec![0.2 - s],
                equalities: vec![],
            }
        });
        let problem = crate::problems::ProblemDefinition::new(
            "counted",
            2,
            inner.bounds().clone(),
            1,
            0,
            eval,
            inner.reference_front().to_vec(),
            true,
        )
        .unwrap();
        let config = small_config(3);
        let _ = run(&problem, &config).unwrap();
        assert_eq!(count.load(Ordering::Relaxed), config.max_fe);
    }

    #[test]
    fn budget_can_cut_a_generation_mid_way() {
        // population 20, budget 250, interval 50: after init (20 FEs) the
        // first generation is cut after 230 offspring evaluations
        let problem = builtin_problem::<f64>("box-sphere").unwrap();
        let config = RunConfig {
            population_size: 20,
            max_fe: 250,
            checkpoint_interval: 50,
            seed: 11,
            ..RunConfig::default()
        };
        let trace = run(&problem, &config).unwrap();
        assert_eq!(trace.checkpoints.len(), 5);
        assert_eq!(trace.checkpoints.last().unwrap().fe, 250);
        assert_eq!(trace.final_population.len(), 20);
    }

    #[test]
    fn same_seed_reproduces_the_trace_exactly() {
        let problem = builtin_problem::<f64>("tail-cap").unwrap();
        let a = run(&problem, &small_config(42)).unwrap();
        let b = run(&problem, &small_config(42)).unwrap();
        assert_eq!(a.checkpoints, b.checkpoints);
        for (x, y) in a.final_population.iter().zip(&b.final_population) {
            assert_eq!(x.x, y.x);
            assert_eq!(x.f, y.f);
            assert_eq!(x.cv, y.cv);
        }
        let c = run(&problem, &small_config(43)).unwrap();
        assert_ne!(a.checkpoints, c.checkpoints);
    }

    #[test]
    fn min_cv_never_increases_on_a_tolerant_problem() {
        // survivors keep the best violation around, so the per-checkpoint
        // minimum violation cannot get worse over a run
        let problem = builtin_problem::<f64>("tail-cap").unwrap();
        let trace = run(&problem, &small_config(5)).unwrap();
        let first = trace.checkpoints.first().unwrap().min_cv;
        let last = trace.checkpoints.last().unwrap().min_cv;
        assert!(last <= first);
    }

    #[test]
    fn igd_state_examples() {
        let front = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        // single feasible member sitting on a front point: IGD averages the
        // distances from both reference points to it
        let pop = vec![Individual::evaluated(vec![0.0], vec![0.0, 1.0], 0.0)];
        let (igd_v, min_cv, count) = population_igd_state(&pop, &front).unwrap();
        assert_eq!(count, 1);
        assert_eq!(min_cv, 0.0);
        assert_eq!(igd_v, (0.0 + 2.0f64.sqrt()) / 2.0);
        // no feasible member: sentinel
        let pop = vec![Individual::evaluated(vec![0.0], vec![0.0, 1.0], 0.25)];
        let (igd_v, min_cv, count) = population_igd_state(&pop, &front).unwrap();
        assert!(igd_v.is_infinite());
        assert_eq!(min_cv, 0.25);
        assert_eq!(count, 0);
        assert!(population_igd_state::<f64>(&[], &front).is_err());
    }

    #[test]
    fn engine_runs_at_f32() {
        let problem = builtin_problem::<f32>("box-sphere").unwrap();
        let config = RunConfig::<f32> {
            population_size: 10,
            max_fe: 500,
            checkpoint_interval: 100,
            seed: 1,
            ..RunConfig::default()
        };
        let trace = run(&problem, &config).unwrap();
        assert_eq!(trace.checkpoints.len(), 5);
    }
}
