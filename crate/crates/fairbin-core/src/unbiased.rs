//! Exact group-parity binning: choose k-1 boundary candidates minimizing
//! the max-minus-min bucket width.

use crate::binning::{check_k, Binning, Solution, SolveOutcome, SplitRule};
use crate::candidates::{boundary_candidates, CandidateSet};
use crate::column::SortedColumn;
use crate::dp::DpMatrix;
use crate::error::Result;
use crate::exec::Threading;

/// Any pair of boundary candidates encloses a parity-preserving bucket, so
/// the DP runs over candidate positions with no per-bucket feasibility
/// check. Returns `Infeasible` when fewer than `k` candidates exist.
pub fn solve_unbiased(col: &SortedColumn, k: usize, rule: SplitRule) -> Result<SolveOutcome> {
    solve_unbiased_with(col, k, rule, Threading::default())
}

pub fn solve_unbiased_with(
    col: &SortedColumn,
    k: usize,
    rule: SplitRule,
    threading: Threading,
) -> Result<SolveOutcome> {
    check_k(k, col.n())?;
    let t = boundary_candidates(col, rule);
    if t.m() < k {
        return Ok(SolveOutcome::Infeasible);
    }
    let ub = greedy_upper_bound(&t, k, col.n());
    let matrix = DpMatrix::fill(t.indices(), k, |_, _| true, ub, threading);
    match matrix.best() {
        None => Ok(SolveOutcome::Infeasible),
        Some((_, element)) => {
            let splits = matrix.trace_back_from(element)?;
            let binning = Binning::new(col, splits, rule)?;
            Ok(SolveOutcome::Feasible(Solution::new(binning)))
        }
    }
}

/// Fills the DP matrix without tracing back; exposed for inspection and
/// for driving [`trace_back`] directly.
pub fn fill_matrix(t: &CandidateSet, k: usize, threading: Threading) -> DpMatrix {
    DpMatrix::fill(t.indices(), k, |_, _| true, None, threading)
}

/// Walks predecessor links from the final cell, emitting splits in
/// increasing order. A k=1 matrix yields an empty split list.
pub fn trace_back(matrix: &DpMatrix) -> Result<Vec<usize>> {
    matrix.trace_back()
}

/// Objective of some valid candidate selection, used to prune the DP: pick
/// each boundary as the nearest remaining candidate to its equal-size
/// position.
fn greedy_upper_bound(t: &CandidateSet, k: usize, n: usize) -> Option<u32> {
    let idx = t.indices();
    let interior = &idx[..idx.len() - 1];
    if interior.len() < k - 1 {
        return None;
    }
    let mut chosen = Vec::with_capacity(k - 1);
    let mut cursor = 0usize;
    for j in 1..k {
        let target = j * n / k;
        // leave enough candidates for the remaining boundaries
        let last_allowed = interior.len() - (k - 1 - j);
        let mut pick = cursor;
        let mut best = interior[cursor].abs_diff(target);
        for i in (cursor + 1)..last_allowed {
            let d = interior[i].abs_diff(target);
            if d < best {
                best = d;
                pick = i;
            }
            if interior[i] > target {
                break;
            }
        }
        chosen.push(interior[pick]);
        cursor = pick + 1;
    }
    let mut lo = usize::MAX;
    let mut hi = 0usize;
    let mut prev = 0usize;
    for &s in chosen.iter().chain(std::iter::once(&n)) {
        let w = s - prev;
        lo = lo.min(w);
        hi = hi.max(w);
        prev = s;
    }
    Some((hi - lo) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::column::testutil::toy_column;
    use crate::column::SortedColumn;

    #[test]
    fn toy_k3() {
        let col = toy_column();
        let out = solve_unbiased(&col, 3, SplitRule::Strict).unwrap();
        let sol = out.solution().expect("feasible");
        assert_eq!(sol.binning.splits(), &[6, 12]);
        assert_eq!(sol.binning.bucket_sizes(), vec![6, 6, 4]);
        assert_eq!(sol.objective, 2);
    }

    #[test]
    fn toy_k2() {
        let col = toy_column();
        let out = solve_unbiased(&col, 2, SplitRule::Strict).unwrap();
        let sol = out.solution().expect("feasible");
        assert_eq!(sol.binning.splits(), &[8]);
        assert_eq!(sol.objective, 0);
    }

    #[test]
    fn toy_k6_is_infeasible() {
        let col = toy_column();
        assert!(!solve_unbiased(&col, 6, SplitRule::Strict)
            .unwrap()
            .is_feasible());
    }

    #[test]
    fn bad_k_is_rejected() {
        let col = toy_column();
        assert!(solve_unbiased(&col, 1, SplitRule::Strict).is_err());
        assert!(solve_unbiased(&col, 17, SplitRule::Strict).is_err());
    }

    #[test]
    fn trace_back_examples() {
        let col = toy_column();
        let t = boundary_candidates(&col, SplitRule::Strict);
        let m3 = fill_matrix(&t, 3, Threading::Sequential);
        assert_eq!(trace_back(&m3).unwrap(), vec![6, 12]);
        let m2 = fill_matrix(&t, 2, Threading::Sequential);
        assert_eq!(trace_back(&m2).unwrap(), vec![8]);
        let m1 = fill_matrix(&t, 1, Threading::Sequential);
        assert_eq!(trace_back(&m1).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn strict_mode_can_remove_too_many_candidates() {
        // parity holds at 2 and 4, but both boundaries sit inside ties
        let rows = [(1.0, 0), (2.0, 1), (2.0, 0), (2.0, 1), (2.0, 0), (2.0, 1)];
        let col = SortedColumn::build(&rows).unwrap();
        assert!(!solve_unbiased(&col, 2, SplitRule::Strict).unwrap().is_feasible());
        assert!(solve_unbiased(&col, 2, SplitRule::Index).unwrap().is_feasible());
    }

    #[test]
    fn output_buckets_preserve_parity() {
        let col = toy_column();
        for k in 2..=5 {
            if let SolveOutcome::Feasible(sol) = solve_unbiased(&col, k, SplitRule::Strict).unwrap()
            {
                for j in 0..sol.binning.k() {
                    let (lo, hi) = sol.binning.bucket_range(j);
                    for l in 0..col.ell() {
                        assert_eq!(
                            col.group_count_in(lo, hi, l) * col.n() as u64,
                            col.group_total(l) * (hi - lo) as u64
                        );
                    }
                }
            }
        }
    }
}
