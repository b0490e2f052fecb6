//! Binnings: k-1 split indices over the sorted order, plus the realized
//! boundary values.

use crate::column::SortedColumn;
use crate::error::{Error, Result};

/// How split indices interact with duplicate attribute values.
///
/// `Strict` (the default) only allows splits where the boundary value
/// actually separates the two sides, preserving half-open value-range
/// bucket semantics. `Index` splits ties by sorted position; reports mark
/// such boundaries as non-separating.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitRule {
    Strict,
    Index,
}

impl SplitRule {
    #[inline]
    pub(crate) fn allows(&self, col: &SortedColumn, i: usize) -> bool {
        match self {
            SplitRule::Strict => col.splittable_at(i),
            SplitRule::Index => true,
        }
    }
}

/// A k-binning: strictly increasing split indices in `(0, n)`.
///
/// Bucket `j` (0-based) spans sorted positions `(splits[j-1], splits[j]]`
/// with the sentinels `splits[-1] = 0` and `splits[k-1] = n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Binning {
    splits: Vec<usize>,
    boundary_values: Vec<f64>,
    n: usize,
}

impl Binning {
    /// Validates the invariants and realizes boundary values from the column.
    pub fn new(col: &SortedColumn, splits: Vec<usize>, rule: SplitRule) -> Result<Binning> {
        let n = col.n();
        let mut prev = 0usize;
        for &s in &splits {
            if s <= prev || s >= n {
                return Err(Error::IndexOutOfRange { index: s, n });
            }
            if !rule.allows(col, s) {
                return Err(Error::IndexOutOfRange { index: s, n });
            }
            prev = s;
        }
        let boundary_values = splits.iter().map(|&s| col.values()[s - 1]).collect();
        Ok(Binning {
            splits,
            boundary_values,
            n,
        })
    }

    pub fn k(&self) -> usize {
        self.splits.len() + 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn splits(&self) -> &[usize] {
        &self.splits
    }

    /// Upper bound values realized by the splits, `values[splits[j] - 1]`.
    pub fn boundary_values(&self) -> &[f64] {
        &self.boundary_values
    }

    /// Half-open index range `(lo, hi]` of bucket `j`.
    pub fn bucket_range(&self, j: usize) -> (usize, usize) {
        let lo = if j == 0 { 0 } else { self.splits[j - 1] };
        let hi = if j == self.splits.len() {
            self.n
        } else {
            self.splits[j]
        };
        (lo, hi)
    }

    pub fn bucket_sizes(&self) -> Vec<usize> {
        (0..self.k())
            .map(|j| {
                let (lo, hi) = self.bucket_range(j);
                hi - lo
            })
            .collect()
    }

    /// Max bucket size minus min bucket size.
    pub fn objective(&self) -> usize {
        let mut min = usize::MAX;
        let mut max = 0;
        for j in 0..self.k() {
            let (lo, hi) = self.bucket_range(j);
            min = min.min(hi - lo);
            max = max.max(hi - lo);
        }
        max - min
    }

    /// Whether every boundary value separates its two sides (always true
    /// under [`SplitRule::Strict`]).
    pub fn separating(&self, col: &SortedColumn) -> bool {
        self.splits.iter().all(|&s| col.splittable_at(s))
    }

    /// k x ell table of per-bucket group member counts.
    pub fn group_counts(&self, col: &SortedColumn) -> Vec<Vec<u64>> {
        (0..self.k())
            .map(|j| {
                let (lo, hi) = self.bucket_range(j);
                (0..col.ell())
                    .map(|l| col.group_count_in(lo, hi, l))
                    .collect()
            })
            .collect()
    }
}

/// A solver result: the binning together with its objective value.
#[derive(Clone, Debug)]
pub struct Solution {
    pub binning: Binning,
    pub objective: usize,
}

impl Solution {
    pub fn new(binning: Binning) -> Solution {
        let objective = binning.objective();
        Solution { binning, objective }
    }
}

/// Infeasibility is an expected outcome, not an error.
#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Feasible(Solution),
    Infeasible,
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Feasible(_))
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SolveOutcome::Feasible(s) => Some(s),
            SolveOutcome::Infeasible => None,
        }
    }
}

pub(crate) fn check_k(k: usize, n: usize) -> Result<()> {
    if k < 2 || k > n {
        return Err(Error::BadK { k, n });
    }
    Ok(())
}

/// The fairness-unaware equal-frequency baseline: boundaries at
/// `floor(j*n/k)`. Under [`SplitRule::Strict`] each boundary is nudged to
/// the nearest separating index (ties toward the left), keeping boundaries
/// strictly increasing; returns `Infeasible` when no separating assignment
/// exists.
pub fn equal_size_binning(col: &SortedColumn, k: usize, rule: SplitRule) -> Result<SolveOutcome> {
    let n = col.n();
    check_k(k, n)?;
    let mut splits = Vec::with_capacity(k - 1);
    let mut prev = 0usize;
    for j in 1..k {
        let hi_cap = n - (k - j); // leave room for the remaining buckets
        if prev + 1 > hi_cap {
            return Ok(SolveOutcome::Infeasible);
        }
        let target = (j * n / k).clamp(prev + 1, hi_cap);
        let mut chosen = None;
        if rule.allows(col, target) {
            chosen = Some(target);
        } else {
            for d in 1..n {
                let left_ok = target > prev + d;
                let right_ok = target + d <= hi_cap;
                if !left_ok && !right_ok {
                    break;
                }
                if left_ok && rule.allows(col, target - d) {
                    chosen = Some(target - d);
                    break;
                }
                if right_ok && rule.allows(col, target + d) {
                    chosen = Some(target + d);
                    break;
                }
            }
        }
        match chosen {
            Some(s) => {
                splits.push(s);
                prev = s;
            }
            None => return Ok(SolveOutcome::Infeasible),
        }
    }
    let binning = Binning::new(col, splits, rule)?;
    Ok(SolveOutcome::Feasible(Solution::new(binning)))
}
