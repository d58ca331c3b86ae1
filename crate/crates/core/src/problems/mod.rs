//! Constrained multiobjective test problems.
//!
//! A problem bundles box bounds, an evaluator producing objectives and raw
//! constraint values, and a reference front used for quality indicators.
//! Inequalities follow the `g(x) <= 0` convention; equalities `h(x) = 0` are
//! relaxed by a tolerance when violations are aggregated.

mod builtin;
mod front;
pub mod frontgen;

pub use builtin::{builtin_ids, builtin_problem, builtin_suite};
pub use front::load_reference_front;

use std::sync::Arc;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::individual::Individual;
use crate::dominance::pareto_dominates;
use crate::scalar::Real;

/// Default tolerance below which `|h(x)|` counts as satisfying `h(x) = 0`.
pub const DEFAULT_EQ_TOL: f64 = 1e-4;

/// Raw evaluator output before constraint aggregation.
#[derive(Debug, Clone, PartialEq)]
pub struct RawEvaluation<R> {
    pub objectives: Vec<R>,
    pub inequalities: Vec<R>,
    pub equalities: Vec<R>,
}

pub type Evaluator<R> = Arc<dyn Fn(&[R]) -> RawEvaluation<R> + Send + Sync>;

/// Aggregated constraint violation: sum of positive inequality parts plus
/// equality excesses beyond the tolerance. Zero iff `x` is feasible.
pub fn aggregate_cv<R: Real>(inequalities: &[R], equalities: &[R], eq_tol: R) -> R {
    debug_assert!(eq_tol >= R::zero(), "equality tolerance must be >= 0");
    let zero = R::zero();
    let ineq: R = inequalities.iter().map(|&g| g.max(zero)).sum();
    let eq: R = equalities.iter().map(|&h| (h.abs() - eq_tol).max(zero)).sum();
    ineq + eq
}

/// A fully specified constrained multiobjective problem.
pub struct ProblemDefinition<R: Real> {
    id: String,
    n_obj: usize,
    bounds: Bounds<R>,
    n_ineq: usize,
    n_eq: usize,
    evaluator: Evaluator<R>,
    reference_front: Vec<Vec<R>>,
    has_feasible_interior: bool,
}

impl<R: Real> Clone for ProblemDefinition<R> {
    fn clone(&self) -> Self {
        ProblemDefinition {
            id: self.id.clone(),
            n_obj: self.n_obj,
            bounds: self.bounds.clone(),
            n_ineq: self.n_ineq,
            n_eq: self.n_eq,
            evaluator: Arc::clone(&self.evaluator),
            reference_front: self.reference_front.clone(),
            has_feasible_interior: self.has_feasible_interior,
        }
    }
}

impl<R: Real> std::fmt::Debug for ProblemDefinition<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemDefinition")
            .field("id", &self.id)
            .field("dim", &self.bounds.dim())
            .field("n_obj", &self.n_obj)
            .field("n_ineq", &self.n_ineq)
            .field("n_eq", &self.n_eq)
            .field("front_points", &self.reference_front.len())
            .finish()
    }
}

impl<R: Real> ProblemDefinition<R> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: impl Into<String>,
        n_obj: usize,
        bounds: Bounds<R>,
        n_ineq: usize,
        n_eq: usize,
        evaluator: Evaluator<R>,
        reference_front: Vec<Vec<R>>,
        has_feasible_interior: bool,
    ) -> Result<Self> {
        if n_obj < 2 {
            return Err(Error::argument("problems must have at least 2 objectives"));
        }
        validate_front(&reference_front, n_obj)?;
        Ok(ProblemDefinition {
            id: id.into(),
            n_obj,
            bounds,
            n_ineq,
            n_eq,
            evaluator,
            reference_front,
            has_feasible_interior,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    pub fn n_obj(&self) -> usize {
        self.n_obj
    }

    pub fn n_ineq(&self) -> usize {
        self.n_ineq
    }

    pub fn n_eq(&self) -> usize {
        self.n_eq
    }

    pub fn bounds(&self) -> &Bounds<R> {
        &self.bounds
    }

    pub fn reference_front(&self) -> &[Vec<R>] {
        &self.reference_front
    }

    /// Whether the strictly feasible set has nonempty interior. Equality-
    /// constrained problems set this false; a solver cannot be expected to
    /// land exactly on a measure-zero manifold without the tolerance band.
    pub fn has_feasible_interior(&self) -> bool {
        self.has_feasible_interior
    }

    /// Replaces the reference front (e.g. with one loaded from a file).
    pub fn with_reference_front(mut self, front: Vec<Vec<R>>) -> Result<Self> {
        validate_front(&front, self.n_obj)?;
        self.reference_front = front;
        Ok(self)
    }

    /// Evaluates objectives and raw constraints at `x`. Performs no
    /// feasibility aggregation and counts nothing; callers own FE accounting.
    pub fn evaluate(&self, x: &[R]) -> Result<RawEvaluation<R>> {
        if x.len() != self.dim() {
            return Err(Error::argument(format!(
                "point has dimension {}, problem '{}' expects {}",
                x.len(),
                self.id,
                self.dim()
            )));
        }
        let raw = (self.evaluator)(x);
        if raw.objectives.len() != self.n_obj
            || raw.inequalities.len() != self.n_ineq
            || raw.equalities.len() != self.n_eq
        {
            return Err(Error::Evaluation {
                problem: self.id.clone(),
                message: format!(
                    "evaluator returned {} objectives, {} inequalities, {} equalities; \
                     expected {}, {}, {}",
                    raw.objectives.len(),
                    raw.inequalities.len(),
                    raw.equalities.len(),
                    self.n_obj,
                    self.n_ineq,
                    self.n_eq
                ),
            });
        }
        let finite = raw.objectives.iter().all(|v| v.is_finite())
            && raw.inequalities.iter().all(|v| v.is_finite())
            && raw.equalities.iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::Evaluation {
                problem: self.id.clone(),
                message: "evaluator returned a non-finite value".into(),
            });
        }
        Ok(raw)
    }

    /// Evaluates `x` and folds constraints into an aggregated violation.
    pub fn evaluate_individual(&self, x: Vec<R>, eq_tol: R) -> Result<Individual<R>> {
        let raw = self.evaluate(&x)?;
        let cv = aggregate_cv(&raw.inequalities, &raw.equalities, eq_tol);
        Ok(Individual::evaluated(x, raw.objectives, cv))
    }
}

fn validate_front<R: Real>(front: &[Vec<R>], n_obj: usize) -> Result<()> {
    if front.is_empty() {
        return Err(Error::argument("reference front must not be empty"));
    }
    for (i, p) in front.iter().enumerate() {
        if p.len() != n_obj {
            return Err(Error::argument(format!(
                "front point {i} has {} objectives, expected {n_obj}",
                p.len()
            )));
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::argument(format!("front point {i} is not finite")));
        }
    }
    for i in 0..front.len() {
        for j in 0..front.len() {
            if i != j && pareto_dominates(&front[i], &front[j]) {
                return Err(Error::argument(format!(
                    "reference front is not mutually nondominated: point {i} dominates {j}"
                )));
            }
        }
    }
    Ok(())
}
