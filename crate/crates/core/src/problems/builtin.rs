//! Built-in biobjective benchmark suite.
//!
//! Five problems covering the failure modes a feasibility schedule has to
//! survive: a boundary-active constraint, a front pushed off the
//! unconstrained optimum, a disconnected feasible strip, an almost entirely
//! infeasible initialization, and an equality seam. All decision variables
//! live in `[0, 1]`; all problems minimize two objectives.
//!
//! Packaged reference fronts were produced by `make_fronts` (see
//! [`frontgen`](super::frontgen)): at least 10^6 feasible samples per
//! problem, filtered to the nondominated set, thinned to 1000 points by
//! farthest-point selection.

use std::sync::Arc;

use crate::bounds::Bounds;
use crate::scalar::{real, Real};

use super::front::parse_front;
use super::{Evaluator, ProblemDefinition, RawEvaluation};

/// Ids of the packaged problems, in canonical order.
pub fn builtin_ids() -> Vec<&'static str> {
    SPEC_TABLE.iter().map(|s| s.id).collect()
}

/// The full packaged suite, reference fronts attached.
pub fn builtin_suite<R: Real>() -> Vec<ProblemDefinition<R>> {
    SPEC_TABLE
        .iter()
        .map(|s| attach_front(s))
        .collect()
}

/// One packaged problem by id, or `None` for an unknown id.
pub fn builtin_problem<R: Real>(id: &str) -> Option<ProblemDefinition<R>> {
    SPEC_TABLE.iter().find(|s| s.id == id).map(attach_front)
}

/// Problem definition minus the reference front; the front generator uses
/// these directly so it never depends on the files it is producing.
pub(crate) struct BuiltinSpec {
    pub id: &'static str,
    pub dim: usize,
    pub n_ineq: usize,
    pub n_eq: usize,
    pub has_feasible_interior: bool,
    front_text: &'static str,
}

pub(crate) const SPEC_TABLE: &[BuiltinSpec] = &[
    BuiltinSpec {
        id: "box-sphere",
        dim: 5,
        n_ineq: 1,
        n_eq: 0,
        has_feasible_interior: true,
        front_text: include_str!("../../data/box-sphere.front"),
    },
    BuiltinSpec {
        id: "line-shift",
        dim: 5,
        n_ineq: 1,
        n_eq: 0,
        has_feasible_interior: true,
        front_text: include_str!("../../data/line-shift.front"),
    },
    BuiltinSpec {
        id: "sine-gaps",
        dim: 6,
        n_ineq: 1,
        n_eq: 0,
        has_feasible_interior: true,
        front_text: include_str!("../../data/sine-gaps.front"),
    },
    BuiltinSpec {
        id: "tail-cap",
        dim: 6,
        n_ineq: 1,
        n_eq: 0,
        has_feasible_interior: true,
        front_text: include_str!("../../data/tail-cap.front"),
    },
    BuiltinSpec {
        id: "seam-line",
        dim: 2,
        n_ineq: 1,
        n_eq: 1,
        has_feasible_interior: false,
        front_text: include_str!("../../data/seam-line.front"),
    },
];

/// Evaluator for a packaged problem id. Formulas, with `s` the squared norm
/// of the tail variables `x_2..x_D`:
///
/// * `box-sphere`:  f = (x1, 1 - x1 + s),        g1 = 0.2 - x1.
///   Front: f2 = 1 - f1 on f1 in [0.2, 1]; the constraint trims the left end.
/// * `line-shift`:  f = (x1, 1 - x1 + s),        g1 = 0.2 - s.
///   The constraint forbids s < 0.2, so the front shifts to f2 = 1.2 - f1 on
///   f1 in [0, 1] and g1 is active along all of it.
/// * `sine-gaps`:   f = (x1, 1 - x1 + s),        g1 = sin(3 pi x1) - 0.5.
///   Feasible x1 is [0, 1/18] u [5/18, 13/18] u [17/18, 1]; the front is the
///   matching three segments of f2 = 1 - f1.
/// * `tail-cap`:    f = (x1, 1 - sqrt(x1) + s),  g1 = s - 0.25.
///   The cap leaves the unconstrained front f2 = 1 - sqrt(f1) intact but
///   makes a uniformly initialized population almost entirely infeasible
///   (the tail's expected squared norm is 5/3).
/// * `seam-line`:   f = (x1, 1 - x1 + 4 (x2 - 1/4)^2),
///   g1 = 0.1 - x1, h1 = x2 - 1/4.
///   Feasibility requires sitting on the equality seam (within tolerance);
///   the front is f2 = 1 - f1 on f1 in [0.1, 1].
pub(crate) fn evaluator_for<R: Real>(id: &str) -> Evaluator<R> {
    fn tail_sq<R: Real>(x: &[R]) -> R {
        x[1..].iter().map(|&v| v * v).sum()
    }
    match id {
        "box-sphere" => Arc::new(|x: &[R]| RawEvaluation {
            objectives: vec![x[0], R::one() - x[0] + tail_sq(x)],
            inequalities: vec![real::<R>(0.2) - x[0]],
            equalities: vec![],
        }),
        "line-shift" => Arc::new(|x: &[R]| {
            let s = tail_sq(x);
            RawEvaluation {
                objectives: vec![x[0], R::one() - x[0] + s],
                inequalities: vec![real::<R>(0.2) - s],
                equalities: vec![],
            }
        }),
        "sine-gaps" => Arc::new(|x: &[R]| {
            let three_pi = real::<R>(3.0 * std::f64::consts::PI);
            RawEvaluation {
                objectives: vec![x[0], R::one() - x[0] + tail_sq(x)],
                inequalities: vec![(three_pi * x[0]).sin() - real::<R>(0.5)],
                equalities: vec![],
            }
        }),
        "tail-cap" => Arc::new(|x: &[R]| {
            let s = tail_sq(x);
            RawEvaluation {
                objectives: vec![x[0], R::one() - x[0].sqrt() + s],
                inequalities: vec![s - real::<R>(0.25)],
                equalities: vec![],
            }
        }),
        "seam-line" => Arc::new(|x: &[R]| {
            let seam = x[1] - real::<R>(0.25);
            RawEvaluation {
                objectives: vec![x[0], R::one() - x[0] + real::<R>(4.0) * seam * seam],
                inequalities: vec![real::<R>(0.1) - x[0]],
                equalities: vec![seam],
            }
        }),
        other => panic!("unknown builtin problem id '{other}'"),
    }
}

pub(crate) fn bounds_for<R: Real>(spec: &BuiltinSpec) -> Bounds<R> {
    Bounds::uniform_box(spec.dim, R::zero(), R::one()).expect("unit box is valid")
}

fn attach_front<R: Real>(spec: &BuiltinSpec) -> ProblemDefinition<R> {
    let front = parse_front(spec.front_text, &format!("{}.front", spec.id))
        .expect("packaged front parses");
    ProblemDefinition::new(
        spec.id,
        2,
        bounds_for(spec),
        spec.n_ineq,
        spec.n_eq,
        evaluator_for(spec.id),
        front,
        spec.has_feasible_interior,
    )
    .expect("packaged problem is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{aggregate_cv, DEFAULT_EQ_TOL};
    use approx::assert_relative_eq;

    #[test]
    fn suite_contract() {
        let suite = builtin_suite::<f64>();
        assert!(suite.len() >= 4);
        for p in &suite {
            assert_eq!(p.n_obj(), 2);
            assert!(p.n_ineq() >= 1, "{} lacks an inequality", p.id());
            assert!(!p.reference_front().is_empty());
        }
        // at least one problem exercises the equality path
        assert!(suite.iter().any(|p| p.n_eq() > 0));
        // ids resolve and unknown ids do not
        for id in builtin_ids() {
            assert!(builtin_problem::<f64>(id).is_some());
        }
        assert!(builtin_problem::<f64>("no-such-problem").is_none());
    }

    #[test]
    fn box_sphere_hand_computed_point() {
        let p = builtin_problem::<f64>("box-sphere").unwrap();
        let raw = p.evaluate(&[0.5, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(raw.objectives, vec![0.5, 0.5]);
        assert_relative_eq!(raw.inequalities[0], -0.3, max_relative = 1e-12);
        // infeasible side of the box constraint
        let raw = p.evaluate(&[0.1, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_relative_eq!(raw.inequalities[0], 0.1, max_relative = 1e-12);
    }

    #[test]
    fn line_shift_constraint_is_active_on_front() {
        let p = builtin_problem::<f64>("line-shift").unwrap();
        // s = 0.2 exactly: feasible, on the shifted line
        let t = (0.2f64 / 4.0).sqrt();
        let raw = p.evaluate(&[0.5, t, t, t, t]).unwrap();
        assert_relative_eq!(raw.objectives[1], 1.2 - 0.5, max_relative = 1e-12);
        assert!(raw.inequalities[0].abs() < 1e-12);
        // zero tail is infeasible here
        let raw = p.evaluate(&[0.5, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_relative_eq!(raw.inequalities[0], 0.2, max_relative = 1e-12);
    }

    #[test]
    fn sine_gaps_bands() {
        let p = builtin_problem::<f64>("sine-gaps").unwrap();
        let g = |x1: f64| {
            p.evaluate(&[x1, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap().inequalities[0]
        };
        assert!(g(0.0) < 0.0); // left band feasible
        assert!(g(1.0 / 6.0) > 0.0); // sin peak infeasible
        assert!(g(0.5) < 0.0); // middle band feasible
        assert!(g(5.0 / 6.0) > 0.0);
        assert!(g(1.0) < 0.0);
    }

    #[test]
    fn tail_cap_uniform_point_is_infeasible() {
        let p = builtin_problem::<f64>("tail-cap").unwrap();
        let raw = p.evaluate(&[0.5; 6]).unwrap();
        assert_relative_eq!(raw.inequalities[0], 1.0, max_relative = 1e-12); // 5*0.25 - 0.25
        let raw = p.evaluate(&[0.25, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(raw.objectives, vec![0.25, 0.5]);
    }

    #[test]
    fn seam_line_equality_tolerance() {
        let p = builtin_problem::<f64>("seam-line").unwrap();
        let cv_at = |x2: f64| {
            let raw = p.evaluate(&[0.5, x2]).unwrap();
            aggregate_cv(&raw.inequalities, &raw.equalities, DEFAULT_EQ_TOL)
        };
        assert_eq!(cv_at(0.25), 0.0);
        assert_eq!(cv_at(0.25 + 0.99e-4), 0.0);
        assert!(cv_at(0.26) > 0.0);
    }

    #[test]
    fn packaged_fronts_match_their_preimages() {
        // Each data/<id>.preimages row is the decision vector that produced
        // the corresponding front row: it must be feasible and reproduce the
        // stored objectives exactly (both were written from the same run).
        for p in builtin_suite::<f64>() {
            let path = format!(
                "{}/data/{}.preimages",
                env!("CARGO_MANIFEST_DIR"),
                p.id()
            );
            let text = std::fs::read_to_string(&path)
                .unwrap_or_else(|e| panic!("{path}: {e}"));
            let pre = parse_front::<f64>(&text, &path).unwrap();
            assert_eq!(pre.len(), p.reference_front().len(), "{}", p.id());
            for (x, want) in pre.iter().zip(p.reference_front()) {
                let ind = p.evaluate_individual(x.clone(), DEFAULT_EQ_TOL).unwrap();
                assert!(ind.is_feasible(), "{}: preimage infeasible", p.id());
                for (a, b) in ind.f.iter().zip(want) {
                    assert_eq!(a, b, "{}: objective mismatch", p.id());
                }
            }
        }
    }

    #[test]
    fn packaged_fronts_hug_the_analytic_optimum() {
        // closed-form lower envelopes of the feasible objective space
        let analytic: &[(&str, fn(f64) -> f64)] = &[
            ("box-sphere", |f1| 1.0 - f1),
            ("line-shift", |f1| 1.2 - f1),
            ("sine-gaps", |f1| 1.0 - f1),
            ("tail-cap", |f1| 1.0 - f1.sqrt()),
            ("seam-line", |f1| 1.0 - f1),
        ];
        assert_eq!(analytic.len(), builtin_ids().len());
        for (id, envelope) in analytic {
            let p = builtin_problem::<f64>(id).unwrap();
            let mut worst = 0.0f64;
            for point in p.reference_front() {
                let dev = point[1] - envelope(point[0]);
                assert!(dev >= -1e-9, "{id}: point below the true front ({dev})");
                worst = worst.max(dev);
            }
            assert!(worst < 2e-3, "{id}: worst deviation {worst}");
        }
    }

    #[test]
    fn suite_instantiates_at_f32() {
        for p in builtin_suite::<f32>() {
            let x = vec![0.5f32; p.dim()];
            let raw = p.evaluate(&x).unwrap();
            assert_eq!(raw.objectives.len(), 2);
        }
    }
}
