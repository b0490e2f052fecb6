//! Scalable bounded-disparity binning: seed with the divide-and-conquer
//! solution, then search boundary windows around the equal-size positions,
//! pruning with the seed objective.
//!
//! The combination space is scanned in fixed-size lexicographic waves.
//! Inside a wave, workers prune against the incumbent from the previous
//! wave and keep their local best `(objective, rank)`; the per-wave merge
//! takes the minimum. Wave boundaries are constants, so the selected
//! solution is independent of worker count and identical to the sequential
//! scan.

use crate::binning::{check_k, Binning, Solution, SolveOutcome, SplitRule};
use crate::column::SortedColumn;
use crate::dnc::{dnc_solve_with, DncOutcome};
use crate::eps_dp::bucket_within;
use crate::error::Result;
use crate::exec::Threading;
use crate::metrics::BiasMeasure;
use crate::ratio::Epsilon;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Boundary-window placement.
///
/// `Paper` draws a window of width equal to the seed objective around each
/// equal-size boundary; cheap, near-optimal, no optimality guarantee.
/// `Exhaustive` scales the half-width for boundary j by min(j, k-j), which
/// provably covers every binning that improves on the seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowMode {
    Paper,
    Exhaustive,
}

#[derive(Clone, Copy, Debug)]
pub struct LsConfig {
    pub window_mode: WindowMode,
    pub early_exit: bool,
    pub max_combinations: Option<u64>,
    pub split_rule: SplitRule,
    pub threading: Threading,
    pub measure: BiasMeasure,
}

impl Default for LsConfig {
    fn default() -> Self {
        LsConfig {
            window_mode: WindowMode::Exhaustive,
            early_exit: true,
            max_combinations: None,
            split_rule: SplitRule::Strict,
            threading: Threading::default(),
            measure: BiasMeasure::Subtractive,
        }
    }
}

/// One boundary's exploration window: offsets `base .. base + width`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchWindow {
    pub base: usize,
    pub width: usize,
}

/// Result of the local search; `budget_exhausted` marks an incumbent
/// returned because `max_combinations` cut the scan short.
#[derive(Clone, Debug)]
pub struct LsResult {
    pub outcome: SolveOutcome,
    pub budget_exhausted: bool,
}

/// Window for each interior boundary j in 1..k given the seed objective.
pub fn search_windows(n: usize, k: usize, w_dnc: usize, mode: WindowMode) -> Vec<SearchWindow> {
    debug_assert!(w_dnc >= 1);
    (1..k)
        .map(|j| {
            let center = j * n / k;
            match mode {
                WindowMode::Paper => {
                    let width = w_dnc.min(n);
                    let base = center.saturating_sub(w_dnc / 2).min(n - width);
                    SearchWindow { base, width }
                }
                WindowMode::Exhaustive => {
                    // an improving binning has objective <= w_dnc - 1 and its
                    // j-th boundary within min(j, k-j) * (w_dnc - 1) of the
                    // equal-size position; +1 absorbs the floor of center
                    let d = j.min(k - j) * (w_dnc - 1) + 1;
                    let lo = center.saturating_sub(d).max(1);
                    let hi = (center + d).min(n - 1);
                    SearchWindow {
                        base: lo,
                        width: hi - lo + 1,
                    }
                }
            }
        })
        .collect()
}

/// Runs the divide-and-conquer seed, then enumerates boundary combinations
/// in the windows, keeping the best threshold-satisfying binning that
/// improves on the seed. An infeasible seed propagates: no valid binning
/// exists.
pub fn ls_solve(col: &SortedColumn, k: usize, eps: Epsilon, cfg: &LsConfig) -> Result<LsResult> {
    let n = col.n();
    check_k(k, n)?;

    let seed_splits = match dnc_solve_with(col, 0, n, k, eps, cfg.split_rule, cfg.measure)? {
        DncOutcome::Feasible(s) => s,
        DncOutcome::Infeasible => {
            return Ok(LsResult {
                outcome: SolveOutcome::Infeasible,
                budget_exhausted: false,
            })
        }
    };
    let seed = Solution::new(Binning::new(col, seed_splits, cfg.split_rule)?);
    let w_dnc = seed.objective;
    let lower_bound = usize::from(n % k != 0);
    if w_dnc == 0 || (cfg.early_exit && w_dnc <= lower_bound) {
        return Ok(LsResult {
            outcome: SolveOutcome::Feasible(seed),
            budget_exhausted: false,
        });
    }

    let windows = search_windows(n, k, w_dnc, cfg.window_mode);
    let dims: Vec<u128> = windows.iter().map(|w| w.width as u128).collect();
    let total: u128 = dims.iter().product();
    let limit = match cfg.max_combinations {
        Some(b) => total.min(b as u128),
        None => total,
    };

    let decode = |mut rank: u128, out: &mut Vec<usize>| {
        out.clear();
        out.resize(windows.len(), 0);
        for j in (0..windows.len()).rev() {
            out[j] = windows[j].base + (rank % dims[j]) as usize;
            rank /= dims[j];
        }
    };

    // evaluates one combination against the incumbent objective snapshot
    let eval = |rank: u128, snapshot: usize| -> Option<(usize, u128)> {
        let mut bounds = Vec::with_capacity(windows.len());
        decode(rank, &mut bounds);
        let mut prev = 0usize;
        let mut min_w = usize::MAX;
        let mut max_w = 0usize;
        for &b in &bounds {
            if b <= prev || b >= n || !cfg.split_rule.allows(col, b) {
                return None;
            }
            let w = b - prev;
            min_w = min_w.min(w);
            max_w = max_w.max(w);
            prev = b;
        }
        let w = n - prev;
        min_w = min_w.min(w);
        max_w = max_w.max(w);
        let obj = max_w - min_w;
        if obj >= snapshot {
            return None;
        }
        let mut prev = 0usize;
        for &b in bounds.iter().chain(std::iter::once(&n)) {
            if !bucket_within(col, prev, b, eps, cfg.measure) {
                return None;
            }
            prev = b;
        }
        Some((obj, rank))
    };

    const WAVE: u128 = 32_768;
    let mut best: (usize, u128) = (w_dnc, u128::MAX); // sentinel rank = the seed
    let mut scanned: u128 = 0;
    let mut stopped_early = false;
    while scanned < limit {
        let wave_end = (scanned + WAVE).min(limit);
        let len = (wave_end - scanned) as u64;
        let snapshot = best.0;
        let start = scanned;
        let wave_best: Option<(usize, u128)> = if cfg.threading.is_parallel() {
            #[cfg(feature = "parallel")]
            {
                (0..len)
                    .into_par_iter()
                    .filter_map(|o| eval(start + o as u128, snapshot))
                    .min()
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..len).filter_map(|o| eval(start + o as u128, snapshot)).min()
            }
        } else {
            (0..len).filter_map(|o| eval(start + o as u128, snapshot)).min()
        };
        if let Some(wb) = wave_best {
            best = best.min(wb);
        }
        scanned = wave_end;
        if cfg.early_exit && best.0 <= lower_bound {
            stopped_early = true;
            break;
        }
    }

    let outcome = if best.0 < w_dnc {
        let mut bounds = Vec::new();
        decode(best.1, &mut bounds);
        SolveOutcome::Feasible(Solution::new(Binning::new(col, bounds, cfg.split_rule)?))
    } else {
        SolveOutcome::Feasible(seed)
    };
    Ok(LsResult {
        outcome,
        budget_exhausted: total > limit && !stopped_early,
    })
}
