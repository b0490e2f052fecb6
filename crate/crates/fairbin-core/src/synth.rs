//! Seeded synthetic dataset generator: per-group Gaussian values with
//! controlled group probabilities.
//!
//! The sampling scheme is pinned so that a seed reproduces bit-identically
//! anywhere: ChaCha8 seeded with `seed_from_u64`; per row, one u64 draw
//! picks the group by cumulative probability (u / 2^64), then two u64
//! draws feed Box-Muller with uniforms mapped by ((bits >> 11) + 1) * 2^-53
//! into (0, 1], taking z = sqrt(-2 ln u1) * cos(2 pi u2).

use crate::column::MAX_GROUPS;
use crate::error::{Error, Result};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One group's value distribution and sampling probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupParams {
    pub mu: f64,
    pub sigma: f64,
    pub p: f64,
}

/// A synthetic dataset description; probabilities must be positive and sum
/// to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthSpec {
    pub n: usize,
    pub groups: Vec<GroupParams>,
    pub seed: u64,
}

impl SynthSpec {
    /// The benchmark default: n = 1000, two equally likely groups with
    /// means 1000 +/- 50 and sigma 300.
    pub fn defaults(seed: u64) -> SynthSpec {
        SynthSpec::with_mean_gap(1000, 2, 100.0, 300.0, None, seed)
            .expect("default spec is valid")
    }

    /// Groups alternate between means 1000 + gap/2 (odd groups, 1-based)
    /// and 1000 - gap/2 (even groups). `ratios` gives explicit group
    /// probabilities; `None` means equal.
    pub fn with_mean_gap(
        n: usize,
        ell: usize,
        mean_gap: f64,
        sigma: f64,
        ratios: Option<&[f64]>,
        seed: u64,
    ) -> Result<SynthSpec> {
        if ell < 2 {
            return Err(Error::BadSpec(format!("need at least 2 groups, got {ell}")));
        }
        let ps: Vec<f64> = match ratios {
            Some(r) => {
                if r.len() != ell {
                    return Err(Error::BadSpec(format!(
                        "{} ratios given for {} groups",
                        r.len(),
                        ell
                    )));
                }
                r.to_vec()
            }
            None => vec![1.0 / ell as f64; ell],
        };
        let groups = (0..ell)
            .map(|l| GroupParams {
                mu: if l % 2 == 0 {
                    1000.0 + mean_gap / 2.0
                } else {
                    1000.0 - mean_gap / 2.0
                },
                sigma,
                p: ps[l],
            })
            .collect();
        let spec = SynthSpec { n, groups, seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn ell(&self) -> usize {
        self.groups.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::BadSpec("n must be positive".into()));
        }
        let ell = self.groups.len();
        if ell < 2 {
            return Err(Error::BadSpec(format!("need at least 2 groups, got {ell}")));
        }
        if ell > MAX_GROUPS {
            return Err(Error::BadSpec(format!(
                "{ell} groups exceed the maximum of {MAX_GROUPS}"
            )));
        }
        let mut sum = 0.0;
        for (l, g) in self.groups.iter().enumerate() {
            if !(g.p > 0.0) || g.p > 1.0 {
                return Err(Error::BadSpec(format!(
                    "group {l} probability {} must lie in (0, 1]",
                    g.p
                )));
            }
            if !(g.sigma > 0.0) || !g.sigma.is_finite() || !g.mu.is_finite() {
                return Err(Error::BadSpec(format!("group {l} has invalid mu/sigma")));
            }
            sum += g.p;
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::BadSpec(format!(
                "group probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(())
    }
}

#[inline]
fn unit_open(bits: u64) -> f64 {
    // (0, 1]: 53-bit mantissa, never zero so ln() is safe
    ((bits >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Generates `(value, group)` rows; fully determined by the spec's seed.
pub fn generate_synthetic(spec: &SynthSpec) -> Result<Vec<(f64, u8)>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let scale = 1.0 / (u64::MAX as f64 + 1.0);
    let mut rows = Vec::with_capacity(spec.n);
    for _ in 0..spec.n {
        let u = rng.next_u64() as f64 * scale;
        let mut group = spec.groups.len() - 1;
        let mut acc = 0.0;
        for (l, g) in spec.groups.iter().enumerate() {
            acc += g.p;
            if u < acc {
                group = l;
                break;
            }
        }
        let u1 = unit_open(rng.next_u64());
        let u2 = unit_open(rng.next_u64());
        let z = (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
        let g = &spec.groups[group];
        rows.push((g.mu + g.sigma * z, group as u8));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_rows() {
        let spec = SynthSpec::defaults(42);
        let a = generate_synthetic(&spec).unwrap();
        let b = generate_synthetic(&spec).unwrap();
        assert_eq!(a, b);
        let c = generate_synthetic(&SynthSpec::defaults(43)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn defaults_match_benchmark_setting() {
        let spec = SynthSpec::defaults(1);
        assert_eq!(spec.n, 1000);
        assert_eq!(spec.ell(), 2);
        assert_eq!(spec.groups[0].mu, 1050.0);
        assert_eq!(spec.groups[1].mu, 950.0);
        assert_eq!(spec.groups[0].sigma, 300.0);
        assert_eq!(spec.groups[0].p, 0.5);
    }

    #[test]
    fn degenerate_probability_rejected() {
        let spec = SynthSpec {
            n: 10,
            groups: vec![
                GroupParams { mu: 0.0, sigma: 1.0, p: 1.0 },
                GroupParams { mu: 0.0, sigma: 1.0, p: 0.0 },
            ],
            seed: 0,
        };
        assert!(matches!(generate_synthetic(&spec), Err(Error::BadSpec(_))));
        assert!(SynthSpec::with_mean_gap(10, 2, 0.0, 1.0, Some(&[0.6, 0.5]), 0).is_err());
    }

    #[test]
    fn group_ratios_converge() {
        let spec = SynthSpec::with_mean_gap(100_000, 2, 100.0, 300.0, None, 7).unwrap();
        let rows = generate_synthetic(&spec).unwrap();
        let blue = rows.iter().filter(|&&(_, g)| g == 0).count() as f64;
        // 4 sigma of Binomial(1e5, 1/2) is ~632
        assert!((blue - 50_000.0).abs() < 1000.0, "blue count {blue}");
        let mean: f64 = rows
            .iter()
            .filter(|&&(_, g)| g == 0)
            .map(|&(v, _)| v)
            .sum::<f64>()
            / blue;
        assert!((mean - 1050.0).abs() < 5.0, "group-0 mean {mean}");
    }
}
