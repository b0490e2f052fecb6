//! Divide-and-conquer feasibility search: split a range into two
//! threshold-satisfying super buckets near the equal-size point, recurse on
//! each half.
//!
//! Pivot exploration covers the whole guard range
//! `[l + ceil(kappa/2), h - floor(kappa/2)]` in nearest-first order (the
//! equal-size point, then +j before -j), and a failed recursive side
//! backtracks to the next pivot. Merging adjacent satisfying buckets yields
//! a satisfying super bucket, so some pivot of any valid binning survives
//! this search: an `Infeasible` return means no valid binning of the range
//! exists.

use crate::binning::SplitRule;
use crate::column::SortedColumn;
use crate::eps_dp::bucket_within;
use crate::error::{Error, Result};
use crate::metrics::BiasMeasure;
use crate::ratio::Epsilon;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DncOutcome {
    /// Interior split positions, strictly increasing; empty for kappa = 1.
    Feasible(Vec<usize>),
    Infeasible,
}

/// Partitions `(lo, hi]` into `kappa` buckets all passing the bias
/// threshold, near-optimally; see the module docs for the guarantee.
pub fn dnc_solve(
    col: &SortedColumn,
    lo: usize,
    hi: usize,
    kappa: usize,
    eps: Epsilon,
    rule: SplitRule,
) -> Result<DncOutcome> {
    dnc_solve_with(col, lo, hi, kappa, eps, rule, BiasMeasure::Subtractive)
}

pub fn dnc_solve_with(
    col: &SortedColumn,
    lo: usize,
    hi: usize,
    kappa: usize,
    eps: Epsilon,
    rule: SplitRule,
    measure: BiasMeasure,
) -> Result<DncOutcome> {
    if lo >= hi || hi > col.n() {
        return Err(Error::EmptyRange { lo, hi });
    }
    if kappa == 0 || kappa > hi - lo {
        return Err(Error::BadK { k: kappa, n: hi - lo });
    }
    let mut splits = Vec::with_capacity(kappa.saturating_sub(1));
    if split_range(col, lo, hi, kappa, eps, rule, measure, &mut splits) {
        Ok(DncOutcome::Feasible(splits))
    } else {
        Ok(DncOutcome::Infeasible)
    }
}

/// Recursive worker; appends splits of `(lo, hi]` in increasing order.
#[allow(clippy::too_many_arguments)]
fn split_range(
    col: &SortedColumn,
    lo: usize,
    hi: usize,
    kappa: usize,
    eps: Epsilon,
    rule: SplitRule,
    measure: BiasMeasure,
    splits: &mut Vec<usize>,
) -> bool {
    if kappa == 1 {
        return true;
    }
    let half_up = kappa.div_ceil(2);
    let half_dn = kappa / 2;
    // equal-size pivot; floor of the product keeps it inside the guard range
    let base = lo + (half_up * (hi - lo)) / kappa;
    let min_pivot = lo + half_up;
    let max_pivot = hi - half_dn;
    debug_assert!((min_pivot..=max_pivot).contains(&base));

    let try_pivot = |pivot: usize, splits: &mut Vec<usize>| -> bool {
        if !rule.allows(col, pivot)
            || !bucket_within(col, lo, pivot, eps, measure)
            || !bucket_within(col, pivot, hi, eps, measure)
        {
            return false;
        }
        let mark = splits.len();
        if split_range(col, lo, pivot, half_up, eps, rule, measure, splits) {
            splits.push(pivot);
            if split_range(col, pivot, hi, half_dn, eps, rule, measure, splits) {
                return true;
            }
        }
        splits.truncate(mark);
        false
    };

    if try_pivot(base, splits) {
        return true;
    }
    let mut step = 1usize;
    loop {
        let up = base + step;
        let down = base.checked_sub(step).unwrap_or(0);
        let up_ok = up <= max_pivot;
        let down_ok = down >= min_pivot && step <= base;
        if !up_ok && !down_ok {
            return false;
        }
        if up_ok && try_pivot(up, splits) {
            return true;
        }
        if down_ok && try_pivot(down, splits) {
            return true;
        }
        step += 1;
    }
}
