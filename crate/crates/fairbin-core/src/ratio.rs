//! Exact non-negative rationals.
//!
//! Every ratio comparison in this crate goes through integer
//! cross-multiplication; floating point only appears when rendering.

use crate::error::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A non-negative rational in lowest terms.
///
/// Constructors accept 128-bit intermediates so that triple products of
/// counts (bounded by n <= 2^31) never overflow before reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Ratio {
        Self::from_wide(num as u128, den as u128)
    }

    /// Reduce `num/den` given as 128-bit intermediates.
    pub fn from_wide(num: u128, den: u128) -> Ratio {
        assert!(den != 0, "ratio denominator must be positive");
        if num == 0 {
            return Ratio::ZERO;
        }
        let g = gcd(num, den);
        let (num, den) = (num / g, den / g);
        debug_assert!(num <= u64::MAX as u128 && den <= u64::MAX as u128);
        Ratio {
            num: num as u64,
            den: den as u64,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// |a - b| without leaving exact arithmetic.
    pub fn abs_diff(a: Ratio, b: Ratio) -> Ratio {
        let lhs = a.num as u128 * b.den as u128;
        let rhs = b.num as u128 * a.den as u128;
        let den = a.den as u128 * b.den as u128;
        Ratio::from_wide(lhs.abs_diff(rhs), den)
    }

    /// Sum of a slice, reduced once at the end.
    pub fn sum(parts: &[Ratio]) -> Ratio {
        let mut num: u128 = 0;
        let mut den: u128 = 1;
        for p in parts {
            // num/den + p = (num*p.den + p.num*den) / (den*p.den)
            num = num * p.den as u128 + p.num as u128 * den;
            den *= p.den as u128;
            let g = gcd(num.max(1), den);
            num /= g;
            den /= g;
        }
        Ratio::from_wide(num, den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Ratio) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Ratio) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Ratio, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: u64,
            den: u64,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.den == 0 {
            return Err(serde::de::Error::custom("ratio denominator must be positive"));
        }
        Ok(Ratio::new(raw.num, raw.den))
    }
}

/// A bias threshold in [0, 1], stored in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Epsilon {
    num: u64,
    den: u64,
}

impl Epsilon {
    pub const ZERO: Epsilon = Epsilon { num: 0, den: 1 };
    pub const ONE: Epsilon = Epsilon { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Epsilon> {
        if den == 0 || num > den {
            return Err(Error::BadEpsilon { num, den });
        }
        let r = Ratio::new(num, den);
        Ok(Epsilon {
            num: r.num(),
            den: r.den(),
        })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn as_ratio(&self) -> Ratio {
        Ratio {
            num: self.num,
            den: self.den,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Parses `"3/100"`, or a bare integer `"0"`/`"1"`.
impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Epsilon> {
        let bad = || Error::BadSpec(format!("cannot parse epsilon `{s}`, expected NUM/DEN"));
        match s.split_once('/') {
            Some((n, d)) => {
                let num = n.trim().parse::<u64>().map_err(|_| bad())?;
                let den = d.trim().parse::<u64>().map_err(|_| bad())?;
                Epsilon::new(num, den)
            }
            None => {
                let num = s.trim().parse::<u64>().map_err(|_| bad())?;
                Epsilon::new(num, 1)
            }
        }
    }
}
