//! Exact bounded-disparity binning: the quadratic DP over all split
//! positions, with the per-bucket threshold predicate evaluated lazily from
//! prefix counts instead of materializing the O(n^2) feasibility table.

use crate::binning::{check_k, Binning, Solution, SolveOutcome, SplitRule};
use crate::column::SortedColumn;
use crate::dnc::{dnc_solve_with, DncOutcome};
use crate::dp::DpMatrix;
use crate::error::{Error, Result};
use crate::exec::Threading;
use crate::metrics::BiasMeasure;
use crate::ratio::Epsilon;

/// Default cap on n for the quadratic solver; larger inputs are refused
/// and pointed at the local-search solver.
pub const DEFAULT_N_CAP: usize = 50_000;

#[derive(Clone, Copy, Debug)]
pub struct EpsDpOptions {
    pub split_rule: SplitRule,
    pub threading: Threading,
    pub measure: BiasMeasure,
    /// Inputs with n above this are refused with an error.
    pub n_cap: usize,
}

impl Default for EpsDpOptions {
    fn default() -> Self {
        EpsDpOptions {
            split_rule: SplitRule::Strict,
            threading: Threading::default(),
            measure: BiasMeasure::Subtractive,
            n_cap: DEFAULT_N_CAP,
        }
    }
}

/// Whether the bucket `(lo, hi]` keeps every group's ratio within `eps` of
/// its overall ratio. Exact integer form: for every group `l`,
/// `|count*n - total*w| * eps.den <= eps.num * w * n` with `w = hi - lo`.
pub fn is_bucket_eps_biased(
    col: &SortedColumn,
    lo: usize,
    hi: usize,
    eps: Epsilon,
) -> Result<bool> {
    if lo >= hi || hi > col.n() {
        return Err(Error::EmptyRange { lo, hi });
    }
    Ok(bucket_within(col, lo, hi, eps, BiasMeasure::Subtractive))
}

/// Unchecked fast path shared by every solver; `measure` selects between
/// the subtractive and the divisive bias definition.
#[inline]
pub(crate) fn bucket_within(
    col: &SortedColumn,
    lo: usize,
    hi: usize,
    eps: Epsilon,
    measure: BiasMeasure,
) -> bool {
    let n = col.n() as u64;
    let w = (hi - lo) as u64;
    let (num, den) = (eps.num() as u128, eps.den() as u128);
    for l in 0..col.ell() {
        let count = col.group_count_in(lo, hi, l);
        match measure {
            BiasMeasure::Subtractive => {
                let scaled_bucket = count * n;
                let scaled_overall = col.group_total(l) * w;
                let diff = scaled_bucket.abs_diff(scaled_overall) as u128;
                if diff * den > num * w as u128 * n as u128 {
                    return false;
                }
            }
            BiasMeasure::Divisive => {
                // bias = 1 - min(r_b, r_o)/max(r_b, r_o); an empty group in
                // the bucket counts as bias 1 by convention
                if count == 0 {
                    if num < den {
                        return false;
                    }
                    continue;
                }
                let a = count * n; // r_bucket scaled by w*n
                let b = col.group_total(l) * w; // r_overall scaled by w*n
                let (hi_r, lo_r) = if a >= b { (a, b) } else { (b, a) };
                if (hi_r - lo_r) as u128 * den > num * hi_r as u128 {
                    return false;
                }
            }
        }
    }
    true
}

/// Minimizes max-minus-min bucket width over k-binnings whose every bucket
/// passes the threshold predicate. With `eps = 0` this solves the exact
/// group-parity problem and must agree with the candidate-based solver.
pub fn solve_eps_biased(
    col: &SortedColumn,
    k: usize,
    eps: Epsilon,
    opts: &EpsDpOptions,
) -> Result<SolveOutcome> {
    let n = col.n();
    check_k(k, n)?;
    if n > opts.n_cap {
        return Err(Error::EpsDpCapExceeded { n, cap: opts.n_cap });
    }

    // positions a split may occupy; n itself always terminates the prefix
    let positions: Vec<usize> = (1..=n)
        .filter(|&i| i == n || opts.split_rule.allows(col, i))
        .collect();
    if positions.len() < k {
        return Ok(SolveOutcome::Infeasible);
    }

    // a known-achievable objective bounds the DP frontier; the verdict on
    // feasibility below comes from the DP alone
    let ub = match dnc_solve_with(col, 0, n, k, eps, opts.split_rule, opts.measure)? {
        DncOutcome::Feasible(splits) => {
            Some(Binning::new(col, splits, opts.split_rule)?.objective() as u32)
        }
        DncOutcome::Infeasible => None,
    };

    let feasible = |lo: usize, hi: usize| bucket_within(col, lo, hi, eps, opts.measure);
    let matrix = DpMatrix::fill(&positions, k, feasible, ub, opts.threading);
    match matrix.best() {
        None => Ok(SolveOutcome::Infeasible),
        Some((_, element)) => {
            let splits = matrix.trace_back_from(element)?;
            let binning = Binning::new(col, splits, opts.split_rule)?;
            debug_assert!((0..binning.k()).all(|j| {
                let (lo, hi) = binning.bucket_range(j);
                bucket_within(col, lo, hi, eps, opts.measure)
            }));
            Ok(SolveOutcome::Feasible(Solution::new(binning)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::column::testutil::toy_column;
    use crate::column::SortedColumn;

    fn opts() -> EpsDpOptions {
        EpsDpOptions {
            threading: Threading::Sequential,
            ..EpsDpOptions::default()
        }
    }

    #[test]
    fn toy_predicate_goldens() {
        let col = toy_column();
        assert!(is_bucket_eps_biased(&col, 0, 8, Epsilon::ZERO).unwrap());
        assert!(!is_bucket_eps_biased(&col, 0, 4, Epsilon::ZERO).unwrap());
        assert!(is_bucket_eps_biased(&col, 0, 4, Epsilon::new(1, 4).unwrap()).unwrap());
        assert!(is_bucket_eps_biased(&col, 0, 16, Epsilon::ZERO).unwrap());
        assert!(matches!(
            is_bucket_eps_biased(&col, 4, 4, Epsilon::ZERO),
            Err(Error::EmptyRange { .. })
        ));
    }

    #[test]
    fn toy_eps_zero_matches_parity_solution() {
        let col = toy_column();
        let out = solve_eps_biased(&col, 3, Epsilon::ZERO, &opts()).unwrap();
        let sol = out.solution().expect("feasible");
        assert_eq!(sol.objective, 2);
        assert_eq!(sol.binning.splits(), &[6, 12]);
    }

    #[test]
    fn toy_eps_one_is_unconstrained() {
        let col = toy_column();
        let out = solve_eps_biased(&col, 3, Epsilon::ONE, &opts()).unwrap();
        assert_eq!(out.solution().expect("feasible").objective, 1);
    }

    #[test]
    fn alternating_six_k2() {
        let rows: Vec<(f64, u8)> = (0..6).map(|i| (i as f64, (i % 2) as u8)).collect();
        let col = SortedColumn::build(&rows).unwrap();
        let out = solve_eps_biased(&col, 2, Epsilon::ZERO, &opts()).unwrap();
        assert_eq!(out.solution().expect("feasible").objective, 2);
    }

    #[test]
    fn cap_is_enforced() {
        let col = toy_column();
        let tight = EpsDpOptions {
            n_cap: 8,
            ..opts()
        };
        assert!(matches!(
            solve_eps_biased(&col, 3, Epsilon::ZERO, &tight),
            Err(Error::EpsDpCapExceeded { n: 16, cap: 8 })
        ));
    }

    #[test]
    fn divisive_measure_toy() {
        let col = toy_column();
        // bucket (0,4] has blue ratio 1/4 vs overall 1/2: divisive bias 1/2
        assert!(!bucket_within(
            &col,
            0,
            4,
            Epsilon::new(49, 100).unwrap(),
            BiasMeasure::Divisive
        ));
        assert!(bucket_within(
            &col,
            0,
            4,
            Epsilon::new(1, 2).unwrap(),
            BiasMeasure::Divisive
        ));
    }
}
