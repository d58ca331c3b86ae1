//! Pareto dominance on objective vectors (minimization).

use crate::scalar::Real;

/// `a` dominates `b`: no worse in every objective, strictly better in at
/// least one. Identical vectors do not dominate each other.
pub fn pareto_dominates<R: Real>(a: &[R], b: &[R]) -> bool {
    debug_assert_eq!(a.len(), b.len(), "objective dimension mismatch");
    let mut strictly_better = false;
    for (&ai, &bi) in a.iter().zip(b) {
        if ai > bi {
            return false;
        }
        if ai < bi {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Indices of points not dominated by any other point, in input order.
/// Quadratic; fine for population-sized sets.
pub fn nondominated_indices<R: Real>(points: &[Vec<R>]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            points
                .iter()
                .enumerate()
                .all(|(j, p)| j == i || !pareto_dominates(p, &points[i]))
        })
        .collect()
}

/// Sweep-based nondominated filter for the biobjective case; `O(n log n)`
/// instead of quadratic, for large sampled sets.
pub fn nondominated_indices_2d<R: Real>(points: &[Vec<R>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (&points[a], &points[b]);
        pa[0].partial_cmp(&pb[0])
            .unwrap()
            .then(pa[1].partial_cmp(&pb[1]).unwrap())
            .then(a.cmp(&b))
    });
    let mut keep = Vec::new();
    let mut best_f2: Option<R> = None;
    let mut i = 0;
    while i < order.len() {
        // group of equal f1: only its minimal f2 can survive
        let f1 = points[order[i]][0];
        let mut j = i;
        while j < order.len() && points[order[j]][0] == f1 {
            j += 1;
        }
        let cand = order[i]; // sorted by f2 within the group
        let f2 = points[cand][1];
        let dominated = match best_f2 {
            Some(b) => f2 >= b,
            None => false,
        };
        if !dominated {
            keep.push(cand);
            best_f2 = Some(f2);
        }
        // duplicates of (f1, f2) within the group are mutually nondominated
        // but redundant; keep only the first.
        i = j;
    }
    keep.sort_unstable();
    keep
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dominance_basics() {
        assert!(pareto_dominates(&[1.0, 2.0], &[2.0, 3.0]));
        assert!(pareto_dominates(&[1.0, 2.0], &[1.0, 3.0]));
        assert!(!pareto_dominates(&[1.0, 2.0], &[1.0, 2.0]));
        assert!(!pareto_dominates(&[1.0, 3.0], &[2.0, 2.0]));
    }

    #[test]
    fn nondominated_filter_drops_interior_points() {
        let pts = vec![
            vec![0.0, 1.0],
            vec![0.5, 0.5],
            vec![1.0, 0.0],
            vec![0.6, 0.6], // dominated by (0.5, 0.5)
        ];
        assert_eq!(nondominated_indices(&pts), vec![0, 1, 2]);
    }

    proptest! {
        #[test]
        fn sweep_matches_quadratic_filter(
            pts in proptest::collection::vec((0.0f64..1.0, 0.0f64..1.0), 1..60),
        ) {
            let pts: Vec<Vec<f64>> = pts.into_iter().map(|(a, b)| vec![a, b]).collect();
            let quad = nondominated_indices(&pts);
            let sweep = nondominated_indices_2d(&pts);
            // quad keeps duplicates of the same point, sweep dedupes; compare
            // the objective-vector sets instead of raw indices.
            let quad_set: std::collections::BTreeSet<(u64, u64)> = quad
                .iter()
                .map(|&i| (pts[i][0].to_bits(), pts[i][1].to_bits()))
                .collect();
            let sweep_set: std::collections::BTreeSet<(u64, u64)> = sweep
                .iter()
                .map(|&i| (pts[i][0].to_bits(), pts[i][1].to_bits()))
                .collect();
            prop_assert_eq!(quad_set, sweep_set);
        }
    }
}
