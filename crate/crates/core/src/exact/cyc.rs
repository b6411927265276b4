use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclotomic::{cyclotomic_polynomial, reduces_to_zero};
use super::phase::{parse_rational, Phase};
use crate::error::{Error, Result};

/// A finite rational combination `Σ r_k e^{iπ q_k}` of phases.
///
/// Equality is semantic: two values are equal when their difference is the
/// complex number zero, decided by reduction modulo a cyclotomic polynomial.
#[derive(Clone, Debug, Default)]
pub struct CycNum {
    terms: BTreeMap<Phase, BigRational>,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum::default()
    }

    pub fn one() -> Self {
        CycNum::from(Phase::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        CycNum::monomial(r, Phase::one())
    }

    pub fn from_int(r: i64) -> Self {
        CycNum::from_rational(BigRational::from_integer(BigInt::from(r)))
    }

    pub fn monomial(coefficient: BigRational, phase: Phase) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(phase, coefficient);
        }
        CycNum { terms }
    }

    /// Builds a value from `(coefficient, phase)` pairs, merging equal phases.
    pub fn from_terms<I: IntoIterator<Item = (BigRational, Phase)>>(terms: I) -> Self {
        let mut out = CycNum::zero();
        for (c, p) in terms {
            out.add_term(p, c);
        }
        out
    }

    fn add_term(&mut self, phase: Phase, coefficient: BigRational) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(phase) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Phase, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `r e^{iπq}` when the value is stored as a single term.
    pub fn as_monomial(&self) -> Option<(&BigRational, &Phase)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(p, c)| (c, p))
        } else {
            None
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return CycNum::zero();
        }
        CycNum {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c * r)).collect(),
        }
    }

    pub fn rotate(&self, phase: &Phase) -> Self {
        CycNum {
            terms: self.terms.iter().map(|(p, c)| (p + phase, c.clone())).collect(),
        }
    }

    /// Exact zero test.
    ///
    /// All phases are written as powers of one primitive `n`-th root of unity
    /// `ζ_n` (with `n` the lcm of their orders); the value is zero iff the
    /// resulting polynomial in `ζ_n` is divisible by `Φ_n`.
    pub fn is_zero(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => false,
            2 => {
                // r1 e^{iπa} + r2 e^{iπb} = 0 iff r1 = r2 and b - a = 1 (mod 2)
                let mut it = self.terms.iter();
                let (p1, c1) = it.next().unwrap();
                let (p2, c2) = it.next().unwrap();
                c1 == c2 && (p2 - p1) == Phase::minus_one()
            }
            _ => self.reduces_to_zero(),
        }
    }

    fn reduces_to_zero(&self) -> bool {
        let n = self.terms.keys().fold(1u64, |acc, p| acc.lcm(&p.order()));
        let denom = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut coeffs = vec![BigInt::zero(); n as usize];
        for (p, c) in &self.terms {
            let j = p.power_of_root(n) as usize;
            coeffs[j] += c.numer() * (&denom / c.denom());
        }
        reduces_to_zero(coeffs, &cyclotomic_polynomial(n))
    }

    /// `r^{-1} e^{-iπq}` for a single-term value `r e^{iπq}`.
    pub fn inv_monomial(&self) -> Result<Self> {
        match self.terms.len() {
            0 => Err(Error::ZeroScalar),
            1 => {
                let (p, c) = self.terms.iter().next().unwrap();
                Ok(CycNum::monomial(c.recip(), p.inverse()))
            }
            _ => Err(Error::NotMonomial(self.to_string())),
        }
    }
}

impl From<Phase> for CycNum {
    fn from(p: Phase) -> Self {
        CycNum::monomial(BigRational::one(), p)
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms || (self - other).is_zero()
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        let mut out = CycNum::zero();
        for (p1, c1) in &self.terms {
            for (p2, c2) in &rhs.terms {
                out.add_term(p1 + p2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| {
                if p.is_one() {
                    format!("{c}")
                } else {
                    format!("{c}·e^(iπ·{p})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coef: String,
    exp: Phase,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(p, c)| TermRepr {
                coef: c.to_string(),
                exp: p.clone(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut out = CycNum::zero();
        for t in terms {
            let c = parse_rational(&t.coef).map_err(serde::de::Error::custom)?;
            out.add_term(t.exp, c);
        }
        Ok(out)
    }
}
