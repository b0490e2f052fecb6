//! The shared width-range dynamic program behind both exact solvers.
//!
//! State: for a prefix ending at a split position and a bucket count, the
//! set of achievable (min width, max width) pairs, kept as an antichain
//! under interval containment. A pair contained in another combines at
//! least as well with any completion (the same suffix buckets keep the
//! combined interval contained), so dominated pairs can be dropped without
//! losing any optimum. Keeping a single best-range pair per cell — tempting,
//! and cheaper — is not exact: a discarded wider-но-shifted pair can beat
//! the kept one once later buckets land outside it.

use crate::error::{Error, Result};
use crate::exec::Threading;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// One achievable (min width, max width) pair for a DP subproblem, with the
/// link used for trace back. `pred` is `(position index, element index)` in
/// the previous layer; `None` marks a first-layer cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DpCell {
    pub min_width: u32,
    pub max_width: u32,
    pub pred: Option<(u32, u32)>,
}

impl DpCell {
    #[inline]
    pub fn range(&self) -> u32 {
        self.max_width - self.min_width
    }
}

/// Filled DP layers over a fixed list of split positions.
///
/// `layers[kappa - 1][j]` holds the antichain for "partition the prefix
/// ending at `positions[j]` into `kappa` buckets"; an empty antichain means
/// that subproblem is infeasible.
#[derive(Debug)]
pub struct DpMatrix {
    positions: Vec<usize>,
    layers: Vec<Vec<Vec<DpCell>>>,
}

/// Sorts candidates by (min desc, max asc, pred asc) and keeps the
/// containment antichain; ties on the interval keep the smallest
/// predecessor.
fn reduce_frontier(cands: &mut Vec<DpCell>) {
    cands.sort_unstable_by(|a, b| {
        b.min_width
            .cmp(&a.min_width)
            .then(a.max_width.cmp(&b.max_width))
            .then(a.pred.cmp(&b.pred))
    });
    let mut kept = 0usize;
    for i in 0..cands.len() {
        if kept == 0 || cands[i].max_width < cands[kept - 1].max_width {
            cands[kept] = cands[i];
            kept += 1;
        }
    }
    cands.truncate(kept);
}

impl DpMatrix {
    /// Fills all `k` layers. `feasible(lo, hi)` decides whether `(lo, hi]`
    /// may form a bucket (both are actual sorted positions). `upper_bound`
    /// prunes pairs whose range already exceeds a known achievable
    /// objective; pass one only if it is realized by some valid binning.
    pub fn fill<F>(
        positions: &[usize],
        k: usize,
        feasible: F,
        upper_bound: Option<u32>,
        threading: Threading,
    ) -> DpMatrix
    where
        F: Fn(usize, usize) -> bool + Sync,
    {
        assert!(k >= 1);
        let p = positions.len();
        let mut layers: Vec<Vec<Vec<DpCell>>> = Vec::with_capacity(k);

        let base: Vec<Vec<DpCell>> = (0..p)
            .map(|j| {
                if feasible(0, positions[j]) {
                    let w = positions[j] as u32;
                    vec![DpCell {
                        min_width: w,
                        max_width: w,
                        pred: None,
                    }]
                } else {
                    Vec::new()
                }
            })
            .collect();
        layers.push(base);

        for kappa in 2..=k {
            let prev = &layers[kappa - 2];
            let fill_cell = |j: usize| -> Vec<DpCell> {
                // a (kappa-1)-bucket prefix needs at least kappa-1 positions
                if j + 1 < kappa {
                    return Vec::new();
                }
                let mut cands = Vec::new();
                for i in (kappa - 2)..j {
                    if prev[i].is_empty() || !feasible(positions[i], positions[j]) {
                        continue;
                    }
                    let w = (positions[j] - positions[i]) as u32;
                    for (e, cell) in prev[i].iter().enumerate() {
                        let lo = cell.min_width.min(w);
                        let hi = cell.max_width.max(w);
                        if upper_bound.is_some_and(|ub| hi - lo > ub) {
                            continue;
                        }
                        cands.push(DpCell {
                            min_width: lo,
                            max_width: hi,
                            pred: Some((i as u32, e as u32)),
                        });
                    }
                }
                reduce_frontier(&mut cands);
                cands
            };

            let layer: Vec<Vec<DpCell>> = if threading.is_parallel() {
                #[cfg(feature = "parallel")]
                {
                    (0..p).into_par_iter().map(fill_cell).collect()
                }
                #[cfg(not(feature = "parallel"))]
                {
                    (0..p).map(fill_cell).collect()
                }
            } else {
                (0..p).map(fill_cell).collect()
            };
            layers.push(layer);
        }

        DpMatrix {
            positions: positions.to_vec(),
            layers,
        }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn k(&self) -> usize {
        self.layers.len()
    }

    /// The optimal objective over the full input, if feasible: the smallest
    /// range in the last cell of the top layer (ties prefer the smallest
    /// predecessor, then the smallest min width).
    pub fn best(&self) -> Option<(u32, usize)> {
        let frontier = self.layers.last()?.last()?;
        frontier
            .iter()
            .enumerate()
            .min_by_key(|(_, c)| (c.range(), c.pred, c.min_width))
            .map(|(e, c)| (c.range(), e))
    }

    /// Walks predecessor links from the chosen final element down to the
    /// first layer, emitting the interior split positions in increasing
    /// order.
    pub fn trace_back_from(&self, element: usize) -> Result<Vec<usize>> {
        let k = self.k();
        let mut splits = Vec::with_capacity(k.saturating_sub(1));
        let mut j = self.positions.len().saturating_sub(1);
        let mut e = element;
        for kappa in (1..=k).rev() {
            let cell = self
                .layers
                .get(kappa - 1)
                .and_then(|layer| layer.get(j))
                .and_then(|frontier| frontier.get(e))
                .ok_or(Error::CorruptMatrix {
                    pos: j,
                    layer: kappa,
                })?;
            if kappa == 1 {
                if cell.pred.is_some() {
                    return Err(Error::CorruptMatrix { pos: j, layer: 1 });
                }
                break;
            }
            let (pi, pe) = cell.pred.ok_or(Error::CorruptMatrix {
                pos: j,
                layer: kappa,
            })?;
            splits.push(self.positions[pi as usize]);
            j = pi as usize;
            e = pe as usize;
        }
        splits.reverse();
        Ok(splits)
    }

    /// Trace back from the best final element.
    pub fn trace_back(&self) -> Result<Vec<usize>> {
        match self.best() {
            Some((_, e)) => self.trace_back_from(e),
            None => Err(Error::CorruptMatrix {
                pos: self.positions.len().saturating_sub(1),
                layer: self.k(),
            }),
        }
    }
}
