//! The circle group `𝕋 = ℝ/ℤ`, realised exactly on its rational points `ℚ/ℤ`.
//!
//! Every character in this crate takes values here. A [`CirclePoint`] is kept
//! in a unique normal form `num/den` with `0 ≤ num < den` and
//! `gcd(num, den) = 1`; zero is `0/1`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::rational_from_uint;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirclePoint {
    num: BigUint,
    den: BigUint,
}

impl CirclePoint {
    pub fn zero() -> Self {
        CirclePoint { num: BigUint::zero(), den: BigUint::one() }
    }

    /// Reduces `numerator / denominator` modulo 1.
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let numerator = numerator.into();
        let mut denominator = denominator.into();
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut numerator = numerator;
        if denominator.is_negative() {
            denominator = -denominator;
            numerator = -numerator;
        }
        Ok(Self::normalize(&numerator, &denominator))
    }

    /// `k/n` for a non-negative integer pair, `n > 0`.
    pub(crate) fn from_parts(k: &BigUint, n: &BigUint) -> Self {
        debug_assert!(!n.is_zero());
        let r = k % n;
        let g = r.gcd(n);
        if r.is_zero() {
            return Self::zero();
        }
        CirclePoint { num: r / &g, den: n / g }
    }

    fn normalize(numerator: &BigInt, denominator: &BigInt) -> Self {
        let r = numerator.mod_floor(denominator);
        let (_, r) = r.into_parts();
        let (_, d) = denominator.clone().into_parts();
        Self::from_parts(&r, &d)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::normalize(r.numer(), r.denom())
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The representative in `[0, 1)` as an exact rational.
    pub fn to_rational(&self) -> BigRational {
        rational_from_uint(&self.num, &self.den)
    }

    /// `m·a mod 1`; negative `m` allowed.
    pub fn scale(&self, m: &BigInt) -> Self {
        let n = BigInt::from(self.num.clone()) * m;
        Self::normalize(&n, &BigInt::from(self.den.clone()))
    }

    /// Distance to `0` along the circle: `min(a, 1 − a)` for `a ∈ [0, 1)`.
    pub fn dist_to_zero(&self) -> BigRational {
        let twice = &self.num * 2u32;
        let num = if twice <= self.den { self.num.clone() } else { &self.den - &self.num };
        rational_from_uint(&num, &self.den)
    }

    /// Order of the point in `𝕋`, which is its reduced denominator.
    pub fn order(&self) -> &BigUint {
        &self.den
    }
}

impl Default for CirclePoint {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &CirclePoint {
    type Output = CirclePoint;

    fn add(self, rhs: &CirclePoint) -> CirclePoint {
        let den = self.den.lcm(&rhs.den);
        let num = &self.num * (&den / &self.den) + &rhs.num * (&den / &rhs.den);
        CirclePoint::from_parts(&num, &den)
    }
}

impl Add for CirclePoint {
    type Output = CirclePoint;

    fn add(self, rhs: CirclePoint) -> CirclePoint {
        &self + &rhs
    }
}

impl Neg for &CirclePoint {
    type Output = CirclePoint;

    fn neg(self) -> CirclePoint {
        if self.is_zero() {
            return CirclePoint::zero();
        }
        CirclePoint { num: &self.den - &self.num, den: self.den.clone() }
    }
}

impl Neg for CirclePoint {
    type Output = CirclePoint;

    fn neg(self) -> CirclePoint {
        -&self
    }
}

impl Sub for &CirclePoint {
    type Output = CirclePoint;

    fn sub(self, rhs: &CirclePoint) -> CirclePoint {
        self + &(-rhs)
    }
}

impl Sub for CirclePoint {
    type Output = CirclePoint;

    fn sub(self, rhs: CirclePoint) -> CirclePoint {
        &self - &rhs
    }
}

impl std::iter::Sum for CirclePoint {
    fn sum<I: Iterator<Item = CirclePoint>>(iter: I) -> Self {
        iter.fold(CirclePoint::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for CirclePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid("circle point", format!("expected \"num/den\", got {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        CirclePoint::new(n, d)
    }
}

#[derive(Serialize, Deserialize)]
struct CircleRepr {
    num: String,
    den: String,
}

impl Serialize for CirclePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CircleRepr { num: self.num.to_string(), den: self.den.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CirclePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = CircleRepr::deserialize(d)?;
        let n: BigInt = r.num.parse().map_err(D::Error::custom)?;
        let den: BigInt = r.den.parse().map_err(D::Error::custom)?;
        if den.sign() == Sign::NoSign {
            return Err(D::Error::custom("zero denominator"));
        }
        CirclePoint::new(n, den).map_err(D::Error::custom)
    }
}

/// Serde adapter writing a point in its textual `num/den` form.
pub mod as_text {
    use super::CirclePoint;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &CirclePoint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CirclePoint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}
