//! The sorted attribute column and its per-group prefix counts.
//!
//! Everything downstream (candidate scan, DP solvers, divide-and-conquer,
//! metrics) reads group counts over index ranges from this structure; it is
//! immutable after construction and safe to share across threads.

use crate::error::{Error, Result};
use crate::ratio::Ratio;

/// Upper bound on the number of demographic groups.
pub const MAX_GROUPS: usize = 16;

/// Largest supported input size; keeps count cross-products within u64.
pub const MAX_ROWS: usize = 1 << 31;

/// Dense demographic group identifier in `0..ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupId(u8);

impl GroupId {
    pub fn new(id: usize) -> Result<GroupId> {
        if id >= MAX_GROUPS {
            return Err(Error::UnknownGroup {
                id,
                ell: MAX_GROUPS,
            });
        }
        Ok(GroupId(id as u8))
    }

    pub fn index(&self) -> usize {
        self.0 as usize
    }
}

/// An attribute column sorted ascending, with aligned group ids and exact
/// per-group prefix counts.
///
/// Sorted positions are 1-based where they denote prefixes: position `i`
/// covers the first `i` tuples, and a split "at i" separates positions
/// `<= i` from `> i`.
#[derive(Clone, Debug)]
pub struct SortedColumn {
    values: Vec<f64>,
    groups: Vec<u8>,
    // (n + 1) x ell, row-major; prefix[i*ell + l] = members of group l among the first i tuples
    prefix: Vec<u32>,
    totals: Vec<u32>,
    original_index: Vec<u32>,
    ell: usize,
}

impl SortedColumn {
    /// Sorts `(value, group)` rows and builds prefix counts. The group count
    /// is inferred as `max id + 1`; every id below it must appear.
    pub fn build(rows: &[(f64, u8)]) -> Result<SortedColumn> {
        let ell = rows.iter().map(|&(_, g)| g as usize + 1).max().unwrap_or(0);
        Self::build_with_groups(rows, ell)
    }

    /// As [`SortedColumn::build`] with an explicit group count, so callers
    /// that know `ell` can reject stray ids.
    pub fn build_with_groups(rows: &[(f64, u8)], ell: usize) -> Result<SortedColumn> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if n > MAX_ROWS {
            return Err(Error::InputTooLarge { n, cap: MAX_ROWS });
        }
        if ell < 2 {
            return Err(Error::TooFewGroups { ell });
        }
        if ell > MAX_GROUPS {
            return Err(Error::TooManyGroups {
                ell,
                max: MAX_GROUPS,
            });
        }
        for (row, &(v, g)) in rows.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteValue { row });
            }
            if g as usize >= ell {
                return Err(Error::UnknownGroup {
                    id: g as usize,
                    ell,
                });
            }
        }

        // Stable sort on value: ties keep input order via the index key.
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_unstable_by(|&a, &b| {
            let (va, vb) = (rows[a as usize].0, rows[b as usize].0);
            va.partial_cmp(&vb).unwrap().then(a.cmp(&b))
        });

        let mut values = Vec::with_capacity(n);
        let mut groups = Vec::with_capacity(n);
        let mut prefix = vec![0u32; (n + 1) * ell];
        for (i, &src) in order.iter().enumerate() {
            let (v, g) = rows[src as usize];
            values.push(v);
            groups.push(g);
            let (prev, cur) = (i * ell, (i + 1) * ell);
            prefix.copy_within(prev..prev + ell, cur);
            prefix[cur + g as usize] += 1;
        }
        let totals = prefix[n * ell..].to_vec();
        if let Some(l) = totals.iter().position(|&t| t == 0) {
            return Err(Error::EmptyGroup {
                group: l.to_string(),
            });
        }

        Ok(SortedColumn {
            values,
            groups,
            prefix,
            totals,
            original_index: order,
            ell,
        })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn groups(&self) -> &[u8] {
        &self.groups
    }

    /// Input row feeding sorted position `i` (0-based).
    pub fn original_index(&self, i: usize) -> usize {
        self.original_index[i] as usize
    }

    /// Members of group `l` among the first `i` tuples (`0 <= i <= n`).
    #[inline]
    pub fn prefix_count(&self, i: usize, l: usize) -> u64 {
        self.prefix[i * self.ell + l] as u64
    }

    #[inline]
    pub fn group_total(&self, l: usize) -> u64 {
        self.totals[l] as u64
    }

    /// Members of group `l` at sorted positions in `(lo, hi]`.
    #[inline]
    pub fn group_count_in(&self, lo: usize, hi: usize, l: usize) -> u64 {
        self.prefix_count(hi, l) - self.prefix_count(lo, l)
    }

    /// Exact ratio of group `l` within the half-open prefix range `(lo, hi]`.
    pub fn group_ratio_in_range(&self, lo: usize, hi: usize, l: usize) -> Result<Ratio> {
        if lo >= hi || hi > self.n() {
            return Err(Error::EmptyRange { lo, hi });
        }
        if l >= self.ell {
            return Err(Error::UnknownGroup { id: l, ell: self.ell });
        }
        Ok(Ratio::new(
            self.group_count_in(lo, hi, l),
            (hi - lo) as u64,
        ))
    }

    /// Whether a boundary after sorted position `i` (1-based) separates the
    /// values: true iff `i = n` or `values[i-1] < values[i]`.
    pub fn is_splittable(&self, i: usize) -> Result<bool> {
        if i == 0 || i > self.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n(),
            });
        }
        Ok(self.splittable_at(i))
    }

    #[inline]
    pub(crate) fn splittable_at(&self, i: usize) -> bool {
        i == self.n() || self.values[i - 1] < self.values[i]
    }
}


#[cfg(test)]
mod tests {
    use super::testutil::{toy_column, toy_rows};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn toy_prefix_counts() {
        let col = toy_column();
        assert_eq!(col.n(), 16);
        assert_eq!(col.ell(), 2);
        // blue counts at i = 6 and i = 16
        assert_eq!(col.prefix_count(6, 0), 3);
        assert_eq!(col.prefix_count(16, 0), 8);
        assert_eq!(col.group_total(1), 8);
    }

    #[test]
    fn toy_group_ratios() {
        let col = toy_column();
        assert_eq!(
            col.group_ratio_in_range(0, 6, 0).unwrap(),
            Ratio::new(3, 6)
        );
        assert_eq!(
            col.group_ratio_in_range(0, 4, 0).unwrap(),
            Ratio::new(1, 4)
        );
        assert!(matches!(
            col.group_ratio_in_range(5, 5, 0),
            Err(Error::EmptyRange { .. })
        ));
    }

    #[test]
    fn singleton_column_rejected_without_second_group() {
        assert!(matches!(
            SortedColumn::build(&[(5.0, 0)]),
            Err(Error::TooFewGroups { ell: 1 })
        ));
        // singleton per group is the smallest valid input
        let col = SortedColumn::build(&[(5.0, 0), (7.0, 1)]).unwrap();
        assert_eq!(col.prefix_count(1, 0), 1);
    }

    #[test]
    fn ingestion_errors() {
        assert!(matches!(SortedColumn::build(&[]), Err(Error::EmptyInput)));
        assert!(matches!(
            SortedColumn::build(&[(f64::NAN, 0), (1.0, 1)]),
            Err(Error::NonFiniteValue { row: 0 })
        ));
        assert!(matches!(
            SortedColumn::build_with_groups(&[(1.0, 0), (2.0, 3)], 2),
            Err(Error::UnknownGroup { id: 3, ell: 2 })
        ));
        assert!(matches!(
            SortedColumn::build_with_groups(&[(1.0, 0), (2.0, 1)], 3),
            Err(Error::EmptyGroup { .. })
        ));
    }

    #[test]
    fn shuffled_build_matches_sorted_build() {
        let rows = toy_rows();
        let mut shuffled = rows.clone();
        shuffled.swap(0, 13);
        shuffled.swap(2, 9);
        shuffled.reverse();
        let a = SortedColumn::build(&rows).unwrap();
        let b = SortedColumn::build(&shuffled).unwrap();
        assert_eq!(a.values(), b.values());
        assert_eq!(a.groups(), b.groups());
        assert_eq!(a.prefix, b.prefix);
    }

    #[test]
    fn splittable_at_duplicates() {
        let col = SortedColumn::build(&[(1.0, 0), (2.0, 1), (2.0, 0), (3.0, 1)]).unwrap();
        assert!(col.is_splittable(1).unwrap());
        assert!(!col.is_splittable(2).unwrap());
        assert!(col.is_splittable(3).unwrap());
        assert!(col.is_splittable(4).unwrap());
        assert!(col.is_splittable(0).is_err());
        assert!(col.is_splittable(5).is_err());
    }

    proptest! {
        #[test]
        fn prefix_counts_increment_by_exactly_one(groups in proptest::collection::vec(0u8..3, 3..60)) {
            prop_assume!(groups.contains(&0) && groups.contains(&1) && groups.contains(&2));
            let rows: Vec<(f64, u8)> = groups.iter().enumerate().map(|(i, &g)| (i as f64, g)).collect();
            let col = SortedColumn::build(&rows).unwrap();
            for i in 1..=col.n() {
                let mut gained = 0;
                for l in 0..col.ell() {
                    let d = col.prefix_count(i, l) - col.prefix_count(i - 1, l);
                    prop_assert!(d <= 1);
                    gained += d;
                }
                prop_assert_eq!(gained, 1);
            }
            for l in 0..col.ell() {
                prop_assert_eq!(
                    col.group_ratio_in_range(0, col.n(), l).unwrap(),
                    Ratio::new(col.group_total(l), col.n() as u64)
                );
            }
        }
    }
}
