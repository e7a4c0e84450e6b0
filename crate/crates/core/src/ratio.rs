//! Exact non-negative rational thresholds.
//!
//! The heuristic update rules compare integer distance ratios against
//! thresholds such as `0.20`. Comparing in floating point would misclassify
//! ties like `5 / 25 > 0.20`, so thresholds are kept as exact fractions and
//! compared by cross-multiplication in `u128`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ConfigError;

/// A non-negative fraction `num / den`. `den == 0` encodes `+inf`.
#[derive(Debug, Clone, Copy)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };
    pub const INFINITY: Ratio = Ratio { num: 1, den: 0 };

    /// Panics if `den == 0`; use [`Ratio::INFINITY`] for an unbounded threshold.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "ratio denominator must be positive");
        Ratio { num, den }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    /// Whether `lhs_num / lhs_den > self`, for `lhs_den > 0`.
    pub fn is_exceeded_by(&self, lhs_num: u64, lhs_den: u64) -> bool {
        debug_assert!(lhs_den > 0);
        u128::from(lhs_num) * u128::from(self.den) > u128::from(self.num) * u128::from(lhs_den)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            self.num as f64 / self.den as f64
        }
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        u128::from(self.num) * u128::from(other.den) == u128::from(other.num) * u128::from(self.den)
    }
}

impl Eq for Ratio {}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            return f.write_str("inf");
        }
        // Powers of ten print as decimals so "0.20" survives a round trip.
        let mut den = self.den;
        let mut digits = 0usize;
        while den.is_multiple_of(10) {
            den /= 10;
            digits += 1;
        }
        if den != 1 {
            return write!(f, "{}/{}", self.num, self.den);
        }
        let int = self.num / self.den;
        if digits == 0 {
            return write!(f, "{int}");
        }
        let frac = self.num % self.den;
        write!(f, "{int}.{frac:0digits$}")
    }
}

impl FromStr for Ratio {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ConfigError::Ratio(s.to_string());
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Ratio::INFINITY);
        }
        if let Some((n, d)) = t.split_once('/') {
            let num: u64 = n.trim().parse().map_err(|_| bad())?;
            let den: u64 = d.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            return Ok(Ratio::new(num, den));
        }
        let (int_part, frac_part) = t.split_once('.').unwrap_or((t, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let digit_str = |p: &str| p.chars().all(|c| c.is_ascii_digit());
        if !digit_str(int_part) || !digit_str(frac_part) || frac_part.len() > 18 {
            return Err(bad());
        }
        let den = 10u64.pow(frac_part.len() as u32);
        let int: u64 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| bad())? };
        let frac: u64 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| bad())? };
        let num = int.checked_mul(den).and_then(|v| v.checked_add(frac)).ok_or_else(bad)?;
        Ok(Ratio::new(num, den))
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
