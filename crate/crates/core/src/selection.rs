//! Feasibility-first environmental selection.
//!
//! Survivors are chosen from the merged parent+offspring set. Members within
//! the current tolerance come first: if they overflow the population size,
//! the nothing-dominates-me subset (`fit < 1`) is kept and, when still too
//! large, thinned by iterated nearest-neighbor removal; otherwise the gap is
//! filled with the best remaining members by fitness. Ordering is stable:
//! every tie falls back to input position, so selection is deterministic.

use crate::error::{Error, Result};
use crate::fitness::{objective_distance, FitnessTable};
use crate::individual::Individual;
use crate::scalar::Real;

/// Survivors plus a breakdown of where they came from.
#[derive(Debug, Clone)]
pub struct SelectionOutcome<R> {
    pub survivors: Vec<Individual<R>>,
    /// Survivors whose violation was within the tolerance.
    pub feasible_kept: usize,
    /// Survivors kept despite exceeding the tolerance.
    pub infeasible_kept: usize,
}

/// Selects `n` survivors from `merged` under tolerance `eps`, using the
/// fitness table computed for exactly this set.
pub fn environmental_select<R: Real>(
    merged: &[Individual<R>],
    table: &FitnessTable<R>,
    n: usize,
    eps: R,
) -> Result<SelectionOutcome<R>> {
    if n == 0 {
        return Err(Error::argument("cannot select an empty population"));
    }
    if merged.len() < n {
        return Err(Error::argument(format!(
            "merged set of {} cannot fill a population of {n}",
            merged.len()
        )));
    }
    if table.fit.len() != merged.len() {
        return Err(Error::argument("fitness table does not match merged set"));
    }

    let (feasible, infeasible): (Vec<usize>, Vec<usize>) =
        (0..merged.len()).partition(|&i| merged[i].cv <= eps);

    let chosen: Vec<usize> = if feasible.len() > n {
        let nondominated: Vec<usize> = feasible
            .iter()
            .copied()
            .filter(|&i| table.fit[i] < R::one())
            .collect();
        match nondominated.len().cmp(&n) {
            std::cmp::Ordering::Greater => truncate_indices(merged, &nondominated, n),
            std::cmp::Ordering::Equal => nondominated,
            std::cmp::Ordering::Less => {
                let mut rest: Vec<usize> = feasible
                    .iter()
                    .copied()
                    .filter(|&i| table.fit[i] >= R::one())
                    .collect();
                rest.sort_by(|&a, &b| {
                    table.fit[a]
                        .partial_cmp(&table.fit[b])
                        .expect("finite fitness")
                        .then(a.cmp(&b))
                });
                let mut keep = nondominated;
                keep.extend(rest.into_iter().take(n - keep.len()));
                keep.sort_unstable();
                keep
            }
        }
    } else {
        // keep every tolerated member, fill with the least-bad others
        let mut rest = infeasible.clone();
        rest.sort_by(|&a, &b| {
            table.fit[a]
                .partial_cmp(&table.fit[b])
                .expect("finite fitness")
                .then(a.cmp(&b))
        });
        let mut keep = feasible.clone();
        keep.extend(rest.into_iter().take(n - feasible.len()));
        keep.sort_unstable();
        keep
    };

    debug_assert_eq!(chosen.len(), n);
    let feasible_kept = chosen.iter().filter(|&&i| merged[i].cv <= eps).count();
    Ok(SelectionOutcome {
        survivors: chosen.iter().map(|&i| merged[i].clone()).collect(),
        feasible_kept,
        infeasible_kept: n - feasible_kept,
    })
}

/// Iterated nearest-neighbor truncation to `target_size` members.
///
/// Repeatedly removes the member whose sorted vector of distances to the
/// still-alive others is lexicographically smallest (the most crowded);
/// exact distance ties compare further down the vector, and fully tied
/// members are removed in input order. Returned members keep input order.
pub fn truncate<R: Real>(set: &[Individual<R>], target_size: usize) -> Result<Vec<Individual<R>>> {
    if target_size < 2 {
        return Err(Error::argument("truncation target must be at least 2"));
    }
    if set.len() <= target_size {
        return Ok(set.to_vec());
    }
    let indices: Vec<usize> = (0..set.len()).collect();
    let keep = truncate_indices(set, &indices, target_size);
    Ok(keep.into_iter().map(|i| set[i].clone()).collect())
}

/// Core truncation on a subset of `set`; returns surviving indices in input
/// order. Distances are computed once; removals only mark neighbors dead.
fn truncate_indices<R: Real>(set: &[Individual<R>], subset: &[usize], target: usize) -> Vec<usize> {
    let m = subset.len();
    debug_assert!(target <= m);
    // per-member neighbor lists sorted by distance, storing local positions
    let dist = |a: usize, b: usize| objective_distance(&set[subset[a]].f, &set[subset[b]].f);
    let neighbors: Vec<Vec<(R, usize)>> = (0..m)
        .map(|i| {
            let mut row: Vec<(R, usize)> = (0..m)
                .filter(|&j| j != i)
                .map(|j| (dist(i, j), j))
                .collect();
            row.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).expect("finite distances"));
            row
        })
        .collect();
    let mut alive = vec![true; m];
    let mut alive_count = m;

    while alive_count > target {
        // lexicographic comparison of alive-distance vectors, skipping dead
        // neighbors lazily; the earliest index wins full ties
        let mut victim = usize::MAX;
        for cand in 0..m {
            if !alive[cand] {
                continue;
            }
            if victim == usize::MAX {
                victim = cand;
                continue;
            }
            if compare_alive(&neighbors[victim], &neighbors[cand], &alive)
                == std::cmp::Ordering::Greater
            {
                victim = cand;
            }
        }
        alive[victim] = false;
        alive_count -= 1;
        // drop the victim from the lazy lists as they are consumed later
    }

    subset
        .iter()
        .enumerate()
        .filter(|(local, _)| alive[*local])
        .map(|(_, &global)| global)
        .collect()
}

/// Orders two members by their sorted distances to currently alive members.
fn compare_alive<R: Real>(
    a: &[(R, usize)],
    b: &[(R, usize)],
    alive: &[bool],
) -> std::cmp::Ordering {
    let mut ia = a.iter().filter(|(_, j)| alive[*j]);
    let mut ib = b.iter().filter(|(_, j)| alive[*j]);
    loop {
        match (ia.next(), ib.next()) {
            (Some((da, _)), Some((db, _))) => {
                match da.partial_cmp(db).expect("finite distances") {
                    std::cmp::Ordering::Equal => continue,
                    other => return other,
                }
            }
            (None, None) => return std::cmp::Ordering::Equal,
            // unequal alive counts cannot happen: both see the same set
            (Some(_), None) => return std::cmp::Ordering::Greater,
            (None, Some(_)) => return std::cmp::Ordering::Less,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fitness::assign_fitness;
    use crate::rng::RandomStream;

    fn ind(f: Vec<f64>, cv: f64) -> Individual<f64> {
        Individual::evaluated(vec![0.0], f, cv)
    }

    fn select(
        merged: &[Individual<f64>],
        n: usize,
        eps: f64,
    ) -> SelectionOutcome<f64> {
        let table = assign_fitness(merged, eps).unwrap();
        environmental_select(merged, &table, n, eps).unwrap()
    }

    #[test]
    fn feasible_minority_keeps_all_feasible_and_best_infeasible() {
        let merged = vec![
            ind(vec![0.5, 0.5], 0.0),
            ind(vec![0.1, 0.9], 0.8),
            ind(vec![0.9, 0.1], 0.4),
            ind(vec![0.3, 0.3], 0.0),
            ind(vec![0.2, 0.2], 1.5),
        ];
        let out = select(&merged, 3, 0.0);
        assert_eq!(out.survivors.len(), 3);
        assert_eq!(out.feasible_kept, 2);
        assert_eq!(out.infeasible_kept, 1);
        // both feasible members survive
        let kept_cvs: Vec<f64> = out.survivors.iter().map(|s| s.cv).collect();
        assert_eq!(kept_cvs.iter().filter(|&&c| c == 0.0).count(), 2);
        // the kept infeasible member is the lowest-fitness one (cv 0.4 here:
        // smaller violation dominates the worse ones under eps = 0)
        assert!(kept_cvs.contains(&0.4));
    }

    #[test]
    fn feasible_overflow_prefers_nondominated() {
        // five feasible, three nondominated, select 3: exactly those three
        let merged = vec![
            ind(vec![0.0, 1.0], 0.0),
            ind(vec![0.5, 0.5], 0.0),
            ind(vec![1.0, 0.0], 0.0),
            ind(vec![0.7, 0.8], 0.0), // dominated
            ind(vec![0.9, 0.9], 0.0), // dominated
        ];
        let out = select(&merged, 3, 0.0);
        let fs: Vec<Vec<f64>> = out.survivors.iter().map(|s| s.f.clone()).collect();
        assert_eq!(
            fs,
            vec![vec![0.0, 1.0], vec![0.5, 0.5], vec![1.0, 0.0]]
        );
        assert_eq!(out.feasible_kept, 3);
    }

    #[test]
    fn feasible_overflow_tops_up_with_best_dominated() {
        let merged = vec![
            ind(vec![0.0, 1.0], 0.0),
            ind(vec![1.0, 0.0], 0.0),
            ind(vec![0.5, 1.1], 0.0), // dominated by (0, 1)
            ind(vec![0.6, 1.2], 0.0), // dominated by (0, 1) and (0.5, 1.1)
            ind(vec![1.5, 0.5], 0.0), // dominated by (1, 0) only: best filler
        ];
        let out = select(&merged, 3, 0.0);
        assert_eq!(out.survivors.len(), 3);
        // two nondominated plus the lowest-fitness dominated member
        let fs: Vec<Vec<f64>> = out.survivors.iter().map(|s| s.f.clone()).collect();
        assert!(fs.contains(&vec![0.0, 1.0]));
        assert!(fs.contains(&vec![1.0, 0.0]));
        assert!(fs.contains(&vec![1.5, 0.5]));
    }

    #[test]
    fn epsilon_widens_the_feasible_partition() {
        let merged = vec![
            ind(vec![0.0, 1.0], 0.3),
            ind(vec![1.0, 0.0], 0.0),
            ind(vec![0.5, 0.5], 0.9),
            ind(vec![0.2, 0.2], 0.0),
        ];
        // under eps = 0.5 the cv 0.3 member counts as feasible
        let out = select(&merged, 3, 0.5);
        assert_eq!(out.feasible_kept, 3);
        assert_eq!(out.infeasible_kept, 0);
    }

    #[test]
    fn truncation_removes_the_middle_of_three_collinear_points() {
        let set = vec![
            ind(vec![0.0, 0.0], 0.0),
            ind(vec![1.0, 0.0], 0.0), // crowded: nearest neighbor at 1 on both sides
            ind(vec![2.0, 0.0], 0.0),
        ];
        let kept = truncate(&set, 2).unwrap();
        let fs: Vec<f64> = kept.iter().map(|s| s.f[0]).collect();
        assert_eq!(fs, vec![0.0, 2.0]);
    }

    #[test]
    fn truncation_on_a_square_breaks_ties_by_input_order() {
        // four corners of a unit square are fully symmetric: the earliest
        // input index is removed first
        let set = vec![
            ind(vec![0.0, 0.0], 0.0),
            ind(vec![0.0, 1.0], 0.0),
            ind(vec![1.0, 0.0], 0.0),
            ind(vec![1.0, 1.0], 0.0),
        ];
        let kept = truncate(&set, 3).unwrap();
        let fs: Vec<Vec<f64>> = kept.iter().map(|s| s.f.clone()).collect();
        assert_eq!(fs, vec![vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]]);
    }

    #[test]
    fn truncation_leaves_small_sets_alone_and_validates_target() {
        let set = vec![ind(vec![0.0, 0.0], 0.0), ind(vec![1.0, 1.0], 0.0)];
        let kept = truncate(&set, 2).unwrap();
        assert_eq!(kept.len(), 2);
        assert!(truncate(&set, 1).is_err());
    }

    #[test]
    fn boundary_case_feasible_exactly_n() {
        let merged = vec![
            ind(vec![0.1, 0.9], 0.0),
            ind(vec![0.9, 0.1], 0.0),
            ind(vec![0.5, 0.5], 0.7),
            ind(vec![0.6, 0.6], 0.9),
        ];
        let out = select(&merged, 2, 0.0);
        assert_eq!(out.feasible_kept, 2);
        assert_eq!(out.infeasible_kept, 0);
    }

    #[test]
    fn selection_is_deterministic() {
        let mut rng = RandomStream::new(31);
        let merged: Vec<Individual<f64>> = (0..40)
            .map(|_| {
                let f = vec![
                    rng.uniform(0.0, 1.0).unwrap(),
                    rng.uniform(0.0, 1.0).unwrap(),
                ];
                let cv = if rng.bernoulli(0.5f64).unwrap() {
                    0.0
                } else {
                    rng.uniform(0.0, 0.5).unwrap()
                };
                ind(f, cv)
            })
            .collect();
        let a = select(&merged, 20, 0.05);
        let b = select(&merged, 20, 0.05);
        for (x, y) in a.survivors.iter().zip(&b.survivors) {
            assert_eq!(x.f, y.f);
            assert_eq!(x.cv, y.cv);
        }
    }

    /// Literal restatement of the truncation rule: recompute every distance
    /// vector from scratch each round.
    fn naive_truncate(set: &[Individual<f64>], target: usize) -> Vec<usize> {
        let mut alive: Vec<usize> = (0..set.len()).collect();
        while alive.len() > target {
            let rows: Vec<Vec<f64>> = alive
                .iter()
                .map(|&i| {
                    let mut ds: Vec<f64> = alive
                        .iter()
                        .filter(|&&j| j != i)
                        .map(|&j| {
                            let mut acc = 0.0;
                            for (a, b) in set[i].f.iter().zip(&set[j].f) {
                                let d = a - b;
                                acc += d * d;
                            }
                            acc.sqrt()
                        })
                        .collect();
                    ds.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    ds
                })
                .collect();
            let mut victim = 0usize;
            for cand in 1..alive.len() {
                if rows[cand] < rows[victim] {
                    victim = cand;
                }
            }
            alive.remove(victim);
        }
        alive
    }

    #[test]
    fn truncation_matches_naive_oracle_on_random_sets() {
        let mut rng = RandomStream::new(555);
        for case in 0..300 {
            let n = 3 + rng.index(9); // up to 11 members
            let target = 2 + rng.index(n - 2);
            let set: Vec<Individual<f64>> = (0..n)
                .map(|_| {
                    // snap to a coarse grid so exact ties actually occur
                    let f = vec![
                        (rng.uniform(0.0f64, 1.0).unwrap() * 4.0).round() / 4.0,
                        (rng.uniform(0.0f64, 1.0).unwrap() * 4.0).round() / 4.0,
                    ];
                    ind(f, 0.0)
                })
                .collect();
            let kept = truncate(&set, target).unwrap();
            let expect = naive_truncate(&set, target);
            let got: Vec<Vec<f64>> = kept.iter().map(|s| s.f.clone()).collect();
            let want: Vec<Vec<f64>> = expect.iter().map(|&i| set[i].f.clone()).collect();
            assert_eq!(got, want, "case {case} (n = {n}, target = {target})");
        }
    }
}
