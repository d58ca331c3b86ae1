//! A candidate solution with its evaluation results.

use crate::scalar::Real;

/// Decision vector plus, once evaluated, objectives and aggregated
/// constraint violation.
///
/// `f` is empty until the problem evaluator has been applied; `cv` is only
/// meaningful afterwards and is always `>= 0`. `fitness` is a cache written
/// by the engine after each fitness assignment; it never participates in
/// equality.
#[derive(Debug, Clone)]
pub struct Individual<R> {
    pub x: Vec<R>,
    pub f: Vec<R>,
    pub cv: R,
    pub fitness: Option<R>,
}

impl<R: Real> Individual<R> {
    /// A not-yet-evaluated candidate.
    pub fn unevaluated(x: Vec<R>) -> Self {
        Individual {
            x,
            f: Vec::new(),
            cv: R::zero(),
            fitness: None,
        }
    }

    /// A fully evaluated candidate.
    pub fn evaluated(x: Vec<R>, f: Vec<R>, cv: R) -> Self {
        debug_assert!(cv >= R::zero(), "constraint violation must be >= 0");
        Individual {
            x,
            f,
            cv,
            fitness: None,
        }
    }

    pub fn is_evaluated(&self) -> bool {
        !self.f.is_empty()
    }

    /// True feasibility: zero aggregated violation.
    pub fn is_feasible(&self) -> bool {
        self.cv == R::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_state_is_tracked() {
        let mut ind = Individual::<f64>::unevaluated(vec![0.1, 0.2]);
        assert!(!ind.is_evaluated());
        assert!(ind.is_feasible()); // placeholder cv of 0 until evaluated
        ind.f = vec![1.0, 2.0];
        ind.cv = 0.25;
        assert!(ind.is_evaluated());
        assert!(!ind.is_feasible());
    }
}
