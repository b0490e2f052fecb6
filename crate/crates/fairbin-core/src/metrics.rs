//! Bias and price-of-fairness reporting, independent of which solver
//! produced the binning. All values are exact rationals; decimals appear
//! only at the formatting layer.

use crate::binning::Binning;
use crate::column::SortedColumn;
use crate::ratio::Ratio;

/// How per-bucket group disparity is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiasMeasure {
    /// |bucket ratio - overall ratio|
    Subtractive,
    /// 1 - min(bucket, overall) / max(bucket, overall)
    Divisive,
}

/// |group ratio in bucket j - overall group ratio|, exact.
pub fn bucket_bias(col: &SortedColumn, binning: &Binning, j: usize, l: usize) -> Ratio {
    let (lo, hi) = binning.bucket_range(j);
    let w = (hi - lo) as u64;
    let n = col.n() as u64;
    let scaled_bucket = col.group_count_in(lo, hi, l) * n;
    let scaled_overall = col.group_total(l) * w;
    Ratio::from_wide(
        scaled_bucket.abs_diff(scaled_overall) as u128,
        w as u128 * n as u128,
    )
}

/// The division-based bias variant; 1 when the bucket has no members of
/// the group (the overall ratio is never zero).
pub fn bucket_bias_div(col: &SortedColumn, binning: &Binning, j: usize, l: usize) -> Ratio {
    let (lo, hi) = binning.bucket_range(j);
    let count = col.group_count_in(lo, hi, l);
    if count == 0 {
        return Ratio::ONE;
    }
    let w = (hi - lo) as u64;
    let n = col.n() as u64;
    let a = count * n;
    let b = col.group_total(l) * w;
    let (hi_r, lo_r) = if a >= b { (a, b) } else { (b, a) };
    Ratio::from_wide((hi_r - lo_r) as u128, hi_r as u128)
}

/// Per-bucket, per-group bias table with its maximum.
#[derive(Clone, Debug)]
pub struct BiasBreakdown {
    pub per_bucket_per_group: Vec<Vec<Ratio>>,
    pub max_bias: Ratio,
    /// (bucket, group) attaining the maximum; ties keep the smallest pair.
    pub argmax: (usize, usize),
}

pub fn binning_bias(col: &SortedColumn, binning: &Binning) -> BiasBreakdown {
    binning_bias_with(col, binning, BiasMeasure::Subtractive)
}

pub fn binning_bias_with(
    col: &SortedColumn,
    binning: &Binning,
    measure: BiasMeasure,
) -> BiasBreakdown {
    let mut table = Vec::with_capacity(binning.k());
    let mut max_bias = Ratio::ZERO;
    let mut argmax = (0, 0);
    for j in 0..binning.k() {
        let mut row = Vec::with_capacity(col.ell());
        for l in 0..col.ell() {
            let b = match measure {
                BiasMeasure::Subtractive => bucket_bias(col, binning, j, l),
                BiasMeasure::Divisive => bucket_bias_div(col, binning, j, l),
            };
            if b > max_bias {
                max_bias = b;
                argmax = (j, l);
            }
            row.push(b);
        }
        table.push(row);
    }
    BiasBreakdown {
        per_bucket_per_group: table,
        max_bias,
        argmax,
    }
}

/// Mean over buckets of |1 - k*size/n|: the relative deviation from
/// equal-size binning, exact.
pub fn price_of_fairness(binning: &Binning) -> Ratio {
    let n = binning.n() as u64;
    let k = binning.k() as u64;
    let mut sum: u128 = 0;
    for j in 0..binning.k() {
        let (lo, hi) = binning.bucket_range(j);
        let size = (hi - lo) as u64;
        sum += n.abs_diff(k * size) as u128;
    }
    Ratio::from_wide(sum, k as u128 * n as u128)
}
