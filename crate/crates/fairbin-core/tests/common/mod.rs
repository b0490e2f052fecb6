//! Shared helpers for integration and acceptance tests: seeded random
//! instances and the worked 16-tuple example.

use fairbin_core::column::SortedColumn;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// R R B R B B R B R R B B B R R B with blue = group 0, values 1..=16.
pub fn toy_column() -> SortedColumn {
    let blue = [3usize, 5, 6, 8, 11, 12, 13, 16];
    let rows: Vec<(f64, u8)> = (1..=16)
        .map(|i| (i as f64, if blue.contains(&i) { 0u8 } else { 1u8 }))
        .collect();
    SortedColumn::build(&rows).unwrap()
}

/// A random column with every group non-empty. `distinct` controls whether
/// values are all distinct or drawn from a small pool (exercising strict
/// split handling around duplicates).
pub fn random_column(rng: &mut ChaCha8Rng, n: usize, ell: usize, distinct: bool) -> SortedColumn {
    assert!(n >= ell);
    let mut rows: Vec<(f64, u8)> = (0..n)
        .map(|i| {
            let g = if i < ell {
                i as u8
            } else {
                (rng.next_u32() as usize % ell) as u8
            };
            let v = if distinct {
                i as f64
            } else {
                (rng.next_u32() as usize % (n / 2 + 1)) as f64
            };
            (v, g)
        })
        .collect();
    // shuffle so group placement is independent of value order
    for i in (1..rows.len()).rev() {
        let j = rng.gen_range(0..=i);
        rows.swap(i, j);
    }
    if distinct {
        for (i, row) in rows.iter_mut().enumerate() {
            row.0 = i as f64;
        }
    }
    SortedColumn::build(&rows).unwrap()
}
