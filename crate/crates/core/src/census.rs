//! Exact class counts of all n-polygons, under rotation (`≡E`) and under the
//! full dihedral group (`≡S`).
//!
//! Both counts share the rotation sum `Σ_{d | n} φ(n/d)² · d! · (n/d)^d`; they
//! differ in the reflection term and in the normalising divisor (`2n²` and
//! `4n²`). All arithmetic is arbitrary precision and every division is checked
//! for exactness.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A non-negative integer of arbitrary size. Serialises as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BigCount(pub BigUint);

impl BigCount {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    /// The value as `u64`, if it fits.
    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for BigCount {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.parse().map(BigCount)
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

/// Euler's totient via `n · Π (1 − 1/p)`.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi is defined for n >= 1");
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors are defined for n >= 1");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn factorial(k: u64) -> BigUint {
    (2..=k).fold(BigUint::one(), |acc, i| acc * i)
}

fn pow(base: u64, exp: u64) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// `Σ_{d | n} φ(n/d)² · d! · (n/d)^d`, the contribution of the rotations.
fn rotation_sum(n: u64) -> BigUint {
    divisors(n)
        .into_iter()
        .map(|d| {
            let k = n / d;
            let phi = BigUint::from(euler_phi(k));
            &phi * &phi * factorial(d) * pow(k, d)
        })
        .sum()
}

fn exact_div(numerator: BigUint, denominator: BigUint, n: u32) -> Result<BigCount> {
    let (q, r) = numerator.div_rem(&denominator);
    if !r.is_zero() {
        return Err(Error::InexactDivision(n));
    }
    Ok(BigCount(q))
}

/// Number of n-polygons up to rotation.
pub fn count_equivalence_classes(n: u32) -> Result<BigCount> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    let nn = u64::from(n);
    let mut total = rotation_sum(nn);
    if n % 2 == 0 {
        let h = nn / 2;
        total += pow(2, h) * h * factorial(h);
    }
    exact_div(total, BigUint::from(2 * nn * nn), n)
}

/// Number of n-polygons up to rotation and reflection.
pub fn count_similarity_classes(n: u32) -> Result<BigCount> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    let nn = u64::from(n);
    let mut total = rotation_sum(nn);
    if n % 2 == 0 {
        let h = nn / 2;
        total += pow(2, h) * (nn * (nn + 6) / 4) * factorial(h);
    } else {
        let h = (nn - 1) / 2;
        total += pow(2, h) * (nn * nn) * factorial(h);
    }
    exact_div(total, BigUint::from(4 * nn * nn), n)
}
