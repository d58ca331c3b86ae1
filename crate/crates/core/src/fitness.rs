//! Constraint-aware strength/density fitness (minimized).
//!
//! Comparisons use a two-level order: first the tolerance-relaxed violation,
//! then Pareto dominance on objectives. Each member's strength counts how
//! many others it dominates under that order; its raw fitness accumulates the
//! strengths of everything dominating it; a k-nearest-neighbor density term
//! breaks ties among mutually nondominated members. `fit < 1` exactly marks
//! the members nothing dominates.

use crate::dominance::pareto_dominates;
use crate::error::{Error, Result};
use crate::individual::Individual;
use crate::scalar::{real, Real};

/// Per-member fitness components for one scored set.
#[derive(Debug, Clone, PartialEq)]
pub struct FitnessTable<R> {
    /// Tolerance-relaxed violations the comparisons used.
    pub relaxed_cv: Vec<R>,
    /// How many set members each member dominates.
    pub strength: Vec<usize>,
    /// Sum of strengths of each member's dominators.
    pub raw: Vec<R>,
    /// `1 / (d_k + 2)` with `d_k` the k-th nearest objective distance.
    pub density: Vec<R>,
    /// `raw + density`; smaller is better.
    pub fit: Vec<R>,
    /// The `k` used for the density term: `floor(sqrt(set size))`.
    pub k: usize,
}

/// Violation beyond the tolerance: `max(0, cv - eps)`.
pub fn relaxed_cv<R: Real>(cv: R, eps: R) -> R {
    debug_assert!(cv >= R::zero() && eps >= R::zero());
    (cv - eps).max(R::zero())
}

/// Two-level dominance: strictly smaller relaxed violation wins outright;
/// equal relaxed violations fall back to Pareto dominance on objectives.
pub fn eps_dominates<R: Real>(a: &Individual<R>, b: &Individual<R>, eps: R) -> bool {
    let ra = relaxed_cv(a.cv, eps);
    let rb = relaxed_cv(b.cv, eps);
    if ra < rb {
        return true;
    }
    if ra > rb {
        return false;
    }
    pareto_dominates(&a.f, &b.f)
}

/// Scores a set of at least two evaluated individuals.
pub fn assign_fitness<R: Real>(set: &[Individual<R>], eps: R) -> Result<FitnessTable<R>> {
    let n = set.len();
    if n < 2 {
        return Err(Error::argument(
            "fitness assignment needs at least two individuals",
        ));
    }
    if let Some(i) = set.iter().position(|ind| !ind.is_evaluated()) {
        return Err(Error::argument(format!(
            "individual {i} is not evaluated"
        )));
    }
    if !(eps >= R::zero()) {
        return Err(Error::argument("eps must be >= 0"));
    }

    let relaxed: Vec<R> = set.iter().map(|ind| relaxed_cv(ind.cv, eps)).collect();

    // dominance matrix under the two-level order
    let mut dominates = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            dominates[i * n + j] = if relaxed[i] < relaxed[j] {
                true
            } else if relaxed[i] > relaxed[j] {
                false
            } else {
                pareto_dominates(&set[i].f, &set[j].f)
            };
        }
    }

    let strength: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| dominates[i * n + j]).count())
        .collect();
    let raw: Vec<R> = (0..n)
        .map(|i| {
            let total: usize = (0..n).filter(|&j| dominates[j * n + i]).map(|j| strength[j]).sum();
            R::from_usize(total).expect("strength sum fits scalar")
        })
        .collect();

    let k = isqrt(n);
    let two = real::<R>(2.0);
    let mut density = Vec::with_capacity(n);
    let mut dist_row: Vec<R> = Vec::with_capacity(n - 1);
    for i in 0..n {
        dist_row.clear();
        for j in 0..n {
            if j != i {
                dist_row.push(objective_distance(&set[i].f, &set[j].f));
            }
        }
        // k-th smallest distance value; selection instead of a full sort
        // keeps this linear per member, and value ties cannot change which
        // distance is selected
        let (_, dk, _) = dist_row
            .select_nth_unstable_by(k - 1, |a, b| a.partial_cmp(b).expect("finite distances"));
        let dk = *dk;
        density.push(R::one() / (dk + two));
    }

    let fit: Vec<R> = raw.iter().zip(&density).map(|(&r, &d)| r + d).collect();
    Ok(FitnessTable {
        relaxed_cv: relaxed,
        strength,
        raw,
        density,
        fit,
        k,
    })
}

/// Euclidean distance in objective space, summed in index order so oracle
/// implementations can reproduce results bit-for-bit.
pub(crate) fn objective_distance<R: Real>(a: &[R], b: &[R]) -> R {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = R::zero();
    for (&x, &y) in a.iter().zip(b) {
        let d = x - y;
        acc = acc + d * d;
    }
    acc.sqrt()
}

/// Integer square root by flooring the float root; exact for the set sizes
/// that occur here (populations, not billions).
pub(crate) fn isqrt(n: usize) -> usize {
    let mut k = (n as f64).sqrt().floor() as usize;
    while (k + 1) * (k + 1) <= n {
        k += 1;
    }
    while k * k > n {
        k -= 1;
    }
    k.max(1)
}
