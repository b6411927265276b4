use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// The unit complex number `e^{iπq}` for a rational `q`, stored by its
/// exponent reduced into `[0, 2)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Phase(BigRational);

/// Reduces a rational modulo 2 into `[0, 2)`.
pub fn reduce_mod2(q: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let k = (q / &two).floor();
    q - k * two
}

impl Phase {
    pub fn new(q: BigRational) -> Self {
        Phase(reduce_mod2(&q))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Phase::new(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The scalar 1.
    pub fn one() -> Self {
        Phase(BigRational::zero())
    }

    /// The scalar -1.
    pub fn minus_one() -> Self {
        Phase(BigRational::one())
    }

    pub fn exponent(&self) -> &BigRational {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    pub fn inverse(&self) -> Self {
        Phase::new(-self.0.clone())
    }

    /// Multiplicative order of the phase as a root of unity.
    pub fn order(&self) -> u64 {
        let p = self.0.numer().to_u64().expect("phase numerator out of range");
        let q = self.0.denom().to_u64().expect("phase denominator out of range");
        let two_q = 2 * q;
        two_q / p.gcd(&two_q)
    }

    /// Writes the phase as `ζ_n^j` for the given `n`, which must be a
    /// multiple of [`Phase::order`].
    pub fn power_of_root(&self, n: u64) -> u64 {
        let p = self.0.numer().to_u64().expect("phase numerator out of range");
        let q = self.0.denom().to_u64().expect("phase denominator out of range");
        let two_q = 2 * q;
        let g = p.gcd(&two_q);
        let order = two_q / g;
        debug_assert_eq!(n % order, 0);
        ((p / g) % n) * (n / order) % n
    }
}

impl Add for &Phase {
    type Output = Phase;
    fn add(self, rhs: &Phase) -> Phase {
        Phase::new(&self.0 + &rhs.0)
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        &self + &rhs
    }
}

impl Sub for &Phase {
    type Output = Phase;
    fn sub(self, rhs: &Phase) -> Phase {
        Phase::new(&self.0 - &rhs.0)
    }
}

impl Neg for &Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        self.inverse()
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

impl FromStr for Phase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(Phase::new)
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing a `BigRational` as `"p/q"`.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn is_even_integer(q: &BigRational) -> bool {
    q.is_integer() && q.numer().is_even()
}
