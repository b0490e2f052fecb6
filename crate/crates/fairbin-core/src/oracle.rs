//! Brute-force reference solvers. These enumerate every split combination
//! and share no solver machinery with the DP or local-search paths — the
//! per-bucket checks are written out again here on purpose, so the two
//! routes stay independent.

use crate::binning::{check_k, Binning, Solution, SolveOutcome, SplitRule};
use crate::column::SortedColumn;
use crate::error::{Error, Result};
use crate::ratio::Epsilon;

/// Combination cap: C(n-1, k-1) beyond this is refused.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
        if acc > u64::MAX as u128 {
            return u128::MAX;
        }
    }
    acc
}

fn parity_ok(col: &SortedColumn, lo: usize, hi: usize) -> bool {
    let n = col.n() as u64;
    let w = (hi - lo) as u64;
    (0..col.ell()).all(|l| col.group_count_in(lo, hi, l) * n == col.group_total(l) * w)
}

fn eps_ok(col: &SortedColumn, lo: usize, hi: usize, eps: Epsilon) -> bool {
    let n = col.n() as u64;
    let w = (hi - lo) as u64;
    (0..col.ell()).all(|l| {
        let diff = (col.group_count_in(lo, hi, l) * n).abs_diff(col.group_total(l) * w);
        diff as u128 * eps.den() as u128 <= eps.num() as u128 * w as u128 * n as u128
    })
}

pub fn brute_force_unbiased(col: &SortedColumn, k: usize, rule: SplitRule) -> Result<SolveOutcome> {
    brute_force_unbiased_with_budget(col, k, rule, DEFAULT_ORACLE_BUDGET)
}

pub fn brute_force_unbiased_with_budget(
    col: &SortedColumn,
    k: usize,
    rule: SplitRule,
    budget: u64,
) -> Result<SolveOutcome> {
    exhaustive(col, k, rule, budget, &|lo, hi| parity_ok(col, lo, hi))
}

pub fn brute_force_eps_biased(
    col: &SortedColumn,
    k: usize,
    eps: Epsilon,
    rule: SplitRule,
) -> Result<SolveOutcome> {
    brute_force_eps_biased_with_budget(col, k, eps, rule, DEFAULT_ORACLE_BUDGET)
}

pub fn brute_force_eps_biased_with_budget(
    col: &SortedColumn,
    k: usize,
    eps: Epsilon,
    rule: SplitRule,
    budget: u64,
) -> Result<SolveOutcome> {
    exhaustive(col, k, rule, budget, &|lo, hi| eps_ok(col, lo, hi, eps))
}

/// Lexicographic enumeration of all split combinations, pruning a branch
/// once its partial max-min already matches the incumbent; strict
/// improvement keeps the lexicographically smallest optimum.
fn exhaustive(
    col: &SortedColumn,
    k: usize,
    rule: SplitRule,
    budget: u64,
    bucket_ok: &dyn Fn(usize, usize) -> bool,
) -> Result<SolveOutcome> {
    let n = col.n();
    check_k(k, n)?;
    let combos = binomial(n - 1, k - 1);
    if combos > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: combos,
            budget,
        });
    }

    struct Search<'a> {
        col: &'a SortedColumn,
        k: usize,
        rule: SplitRule,
        bucket_ok: &'a dyn Fn(usize, usize) -> bool,
        splits: Vec<usize>,
        best: Option<(usize, Vec<usize>)>,
    }

    impl Search<'_> {
        fn rec(&mut self, prev: usize, min_w: usize, max_w: usize) {
            let n = self.col.n();
            let depth = self.splits.len();
            if depth == self.k - 1 {
                let w = n - prev;
                let obj = max_w.max(w) - min_w.min(w);
                if self.best.as_ref().is_some_and(|(b, _)| obj >= *b) {
                    return;
                }
                if (self.bucket_ok)(prev, n) {
                    self.best = Some((obj, self.splits.clone()));
                }
                return;
            }
            let last = n - (self.k - 1 - depth);
            for s in (prev + 1)..=last {
                if !self.rule.allows(self.col, s) || !(self.bucket_ok)(prev, s) {
                    continue;
                }
                let w = s - prev;
                let (lo, hi) = (min_w.min(w), max_w.max(w));
                if self.best.as_ref().is_some_and(|(b, _)| hi - lo >= *b) {
                    continue;
                }
                self.splits.push(s);
                self.rec(s, lo, hi);
                self.splits.pop();
            }
        }
    }

    let mut search = Search {
        col,
        k,
        rule,
        bucket_ok,
        splits: Vec::with_capacity(k - 1),
        best: None,
    };
    search.rec(0, usize::MAX, 0);
    match search.best {
        Some((_, splits)) => {
            let binning = Binning::new(col, splits, rule)?;
            Ok(SolveOutcome::Feasible(Solution::new(binning)))
        }
        None => Ok(SolveOutcome::Infeasible),
    }
}
