//! Offspring generation: fitness-directed differential mutation plus
//! binomial crossover with an occasional heavy-tailed component.
//!
//! Mutation pulls each parent toward a random member of the current fitness
//! elite (the elite window shrinks as the budget is spent) and adds a
//! difference vector whose sign is flipped so it points from the worse of
//! the two sampled members toward the better one. Crossover takes mutant
//! components with probability `CR`; a per-offspring coin decides whether
//! the remaining components stay put or get a Cauchy kick around the parent.

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::fitness::FitnessTable;
use crate::individual::Individual;
use crate::rng::RandomStream;
use crate::scalar::{real, Real};

/// Knobs for offspring generation. Defaults follow the reference settings:
/// scale factors and crossover rates drawn uniformly from small pools, a 20%
/// chance of Cauchy perturbation with scale 0.1.
#[derive(Debug, Clone)]
pub struct VariationConfig<R> {
    pub f_pool: Vec<R>,
    pub cr_pool: Vec<R>,
    pub cauchy_prob: R,
    pub cauchy_scale: R,
}

impl<R: Real> Default for VariationConfig<R> {
    fn default() -> Self {
        VariationConfig {
            f_pool: vec![real(0.6), real(0.8), real(1.0)],
            cr_pool: vec![real(0.1), real(0.2), real(1.0)],
            cauchy_prob: real(0.2),
            cauchy_scale: real(0.1),
        }
    }
}

impl<R: Real> VariationConfig<R> {
    pub fn validate(&self) -> Result<()> {
        if self.f_pool.is_empty() || self.cr_pool.is_empty() {
            return Err(Error::argument("F and CR pools must not be empty"));
        }
        if !(self.cauchy_prob >= R::zero() && self.cauchy_prob <= R::one()) {
            return Err(Error::argument("cauchy_prob must lie in [0, 1]"));
        }
        if !(self.cauchy_scale > R::zero()) {
            return Err(Error::argument("cauchy_scale must be positive"));
        }
        Ok(())
    }
}

/// Elite-window size after `fe` of `max_fe` evaluations: starts at the full
/// population and decays linearly to (almost) greedy, never below 2.
pub fn pbest_window(fe: usize, max_fe: usize, n: usize) -> usize {
    debug_assert!(max_fe > 0 && fe <= max_fe);
    let frac = 1.0 - 0.99 * (fe as f64 / max_fe as f64);
    let p = (n as f64 * frac).floor() as usize;
    p.clamp(2, n.max(2))
}

/// Indices sorted by (fitness, index); a prefix of this is the elite window.
fn fitness_order<R: Real>(table: &FitnessTable<R>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..table.fit.len()).collect();
    order.sort_by(|&a, &b| {
        table.fit[a]
            .partial_cmp(&table.fit[b])
            .expect("finite fitness")
            .then(a.cmp(&b))
    });
    order
}

/// Differential mutant for `population[target]`.
///
/// Draw order: elite pick (re-drawn while it equals the target), then `r1`,
/// then `r2`, each distinct from everything drawn before it.
pub fn mutate<R: Real>(
    target: usize,
    population: &[Individual<R>],
    table: &FitnessTable<R>,
    p: usize,
    f: R,
    stream: &mut RandomStream,
) -> Result<Vec<R>> {
    let n = population.len();
    if n < 4 {
        return Err(Error::argument("mutation needs a population of at least 4"));
    }
    if target >= n || table.fit.len() != n {
        return Err(Error::argument("target index or fitness table mismatch"));
    }
    if !(2..=n).contains(&p) {
        return Err(Error::argument(format!("elite window {p} out of range 2..={n}")));
    }
    mutate_ordered(target, population, table, &fitness_order(table), p, f, stream)
}

/// [`mutate`] with the fitness order precomputed, so batch callers sort the
/// population once per generation instead of once per offspring.
fn mutate_ordered<R: Real>(
    target: usize,
    population: &[Individual<R>],
    table: &FitnessTable<R>,
    order: &[usize],
    p: usize,
    f: R,
    stream: &mut RandomStream,
) -> Result<Vec<R>> {
    let n = population.len();
    let elite = &order[..p];

    let pbest = loop {
        let cand = elite[stream.index(p)];
        if cand != target {
            break cand;
        }
        // a window of >= 2 always contains a non-target member
    };
    let r1 = loop {
        let cand = stream.index(n);
        if cand != target && cand != pbest {
            break cand;
        }
    };
    let r2 = loop {
        let cand = stream.index(n);
        if cand != target && cand != pbest && cand != r1 {
            break cand;
        }
    };

    // difference term points toward the fitter of the two picks
    let f2 = if table.fit[r1] <= table.fit[r2] { f } else { -f };

    let x = &population[target].x;
    let pb = &population[pbest].x;
    let a = &population[r1].x;
    let b = &population[r2].x;
    Ok((0..x.len())
        .map(|k| x[k] + f * (pb[k] - x[k]) + f2 * (a[k] - b[k]))
        .collect())
}

/// Binomial crossover of parent `x` and mutant `v` with rate `cr`.
///
/// One Bernoulli draw per offspring decides whether non-crossed components
/// stay at the parent value or receive a Cauchy perturbation around it.
pub fn crossover<R: Real>(
    x: &[R],
    v: &[R],
    cr: R,
    config: &VariationConfig<R>,
    stream: &mut RandomStream,
) -> Result<Vec<R>> {
    if x.len() != v.len() {
        return Err(Error::argument(format!(
            "crossover dimension mismatch: {} vs {}",
            x.len(),
            v.len()
        )));
    }
    let kick = stream.bernoulli(config.cauchy_prob)?;
    let mut u = Vec::with_capacity(x.len());
    for k in 0..x.len() {
        let r = stream.uniform(R::zero(), R::one())?;
        if r < cr {
            u.push(v[k]);
        } else if kick {
            u.push(stream.cauchy(x[k], config.cauchy_scale)?);
        } else {
            u.push(x[k]);
        }
    }
    Ok(u)
}

/// One offspring per population member: pool-sampled `F` and `CR`, mutation,
/// crossover, clip to bounds. Offspring come back unevaluated.
#[allow(clippy::too_many_arguments)]
pub fn make_offspring<R: Real>(
    population: &[Individual<R>],
    table: &FitnessTable<R>,
    fe: usize,
    max_fe: usize,
    config: &VariationConfig<R>,
    stream: &mut RandomStream,
    bounds: &Bounds<R>,
) -> Result<Vec<Individual<R>>> {
    config.validate()?;
    let n = population.len();
    if n < 4 {
        return Err(Error::argument("offspring generation needs at least 4 parents"));
    }
    if table.fit.len() != n {
        return Err(Error::argument("fitness table does not match population"));
    }
    let p = pbest_window(fe, max_fe, n);
    let order = fitness_order(table);
    let mut offspring = Vec::with_capacity(n);
    for target in 0..n {
        let f = config.f_pool[stream.index(config.f_pool.len())];
        let cr = config.cr_pool[stream.index(config.cr_pool.len())];
        let v = mutate_ordered(target, population, table, &order, p, f, stream)?;
        let u = crossover(&population[target].x, &v, cr, config, stream)?;
        offspring.push(Individual::unevaluated(bounds.clip(&u)?));
    }
    Ok(offspring)
}
