//! Boundary candidates: the sorted positions whose prefix group ratios
//! equal the global ratios. Group-parity splits can only happen here, which
//! is what makes the exact unbiased solver fast.

use crate::binning::SplitRule;
use crate::column::SortedColumn;

/// Strictly increasing candidate positions in `1..=n`; `n` is always a
/// member since the full prefix trivially matches the global ratios.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    indices: Vec<usize>,
}

impl CandidateSet {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// The paper-style candidate count m.
    pub fn m(&self) -> usize {
        self.indices.len()
    }
}

/// Scans the column once, collecting every position `i` with
/// `prefix[i][l] * n == total[l] * i` for all `l` in `0..ell-1` (parity on
/// the first `ell - 1` groups implies the last). Equality is tested by
/// integer cross-multiplication; no division is involved. Under
/// [`SplitRule::Strict`], positions that do not separate duplicate values
/// are dropped (except `n`, which is always splittable).
pub fn boundary_candidates(col: &SortedColumn, rule: SplitRule) -> CandidateSet {
    let n = col.n() as u64;
    let ell = col.ell();
    let mut indices = Vec::new();
    for i in 1..=col.n() {
        let parity = (0..ell - 1).all(|l| col.prefix_count(i, l) * n == col.group_total(l) * i as u64);
        if parity && rule.allows(col, i) {
            indices.push(i);
        }
    }
    CandidateSet { indices }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::column::testutil::toy_column;
    use crate::column::SortedColumn;
    use crate::ratio::Ratio;
    use proptest::prelude::*;

    #[test]
    fn toy_candidates() {
        let t = boundary_candidates(&toy_column(), SplitRule::Strict);
        assert_eq!(t.indices(), &[6, 8, 12, 14, 16]);
        assert_eq!(t.m(), 5);
    }

    #[test]
    fn alternating_column() {
        let rows: Vec<(f64, u8)> = (0..8).map(|i| (i as f64, (i % 2) as u8)).collect();
        let col = SortedColumn::build(&rows).unwrap();
        let t = boundary_candidates(&col, SplitRule::Strict);
        assert_eq!(t.indices(), &[2, 4, 6, 8]);
    }

    #[test]
    fn n_is_always_a_candidate() {
        let rows = [(0.5, 1), (1.5, 0), (2.5, 1), (9.0, 1)];
        let col = SortedColumn::build(&rows).unwrap();
        let t = boundary_candidates(&col, SplitRule::Strict);
        assert_eq!(t.indices().last(), Some(&4));
    }

    #[test]
    fn strict_rule_drops_tied_candidates() {
        // alternating groups but values tied across the i=2 boundary
        let rows = [(1.0, 0), (2.0, 1), (2.0, 0), (3.0, 1)];
        let col = SortedColumn::build(&rows).unwrap();
        assert_eq!(
            boundary_candidates(&col, SplitRule::Strict).indices(),
            &[4]
        );
        assert_eq!(
            boundary_candidates(&col, SplitRule::Index).indices(),
            &[2, 4]
        );
    }

    fn arb_column() -> impl Strategy<Value = SortedColumn> {
        (2usize..4, proptest::collection::vec(0u8..3, 4..80)).prop_filter_map(
            "all groups present",
            |(ell, mut gs)| {
                let ell = ell.min(3);
                for g in gs.iter_mut() {
                    *g %= ell as u8;
                }
                for l in 0..ell as u8 {
                    if !gs.contains(&l) {
                        return None;
                    }
                }
                let rows: Vec<(f64, u8)> =
                    gs.iter().enumerate().map(|(i, &g)| (i as f64, g)).collect();
                SortedColumn::build(&rows).ok()
            },
        )
    }

    proptest! {
        // any pair of candidates encloses a range whose group ratios equal the global ones
        #[test]
        fn candidate_pairs_preserve_group_ratios(col in arb_column()) {
            let t = boundary_candidates(&col, SplitRule::Strict);
            let idx = t.indices();
            for a in 0..idx.len() {
                for b in (a + 1)..idx.len() {
                    for l in 0..col.ell() {
                        let r = col.group_ratio_in_range(idx[a], idx[b], l).unwrap();
                        prop_assert_eq!(r, Ratio::new(col.group_total(l), col.n() as u64));
                    }
                }
            }
        }

        // completeness: every exactly-parity split index is in the candidate set
        #[test]
        fn every_parity_prefix_is_a_candidate(col in arb_column()) {
            let t = boundary_candidates(&col, SplitRule::Strict);
            for i in 1..=col.n() {
                let parity = (0..col.ell()).all(|l| {
                    col.group_ratio_in_range(0, i, l).unwrap()
                        == Ratio::new(col.group_total(l), col.n() as u64)
                });
                if parity {
                    prop_assert!(t.indices().contains(&i));
                }
            }
        }
    }
}
