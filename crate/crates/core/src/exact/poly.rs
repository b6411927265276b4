//! Multivariate polynomials with rational coefficients.
//!
//! These carry exponent data: a polynomial `p` stands for the phase function
//! `n ↦ e^{iπ p(n)}` on integer points, so two exponent polynomials describe
//! the same phases exactly when their difference takes even integer values on
//! all of `Z^r`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::phase::{is_even_integer, parse_rational, reduce_mod2};

type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(m, BigRational::one());
        p
    }

    /// `Σ coeffs[i] x_i + offset`.
    pub fn linear(coeffs: &[i64], offset: i64) -> Self {
        let nvars = coeffs.len();
        let mut p = Poly::constant(nvars, BigRational::from_integer(BigInt::from(offset)));
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                p = &p + &Poly::var(nvars, i).scale(&BigRational::from_integer(BigInt::from(c)));
            }
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    pub fn eval_int(&self, point: &[i64]) -> BigRational {
        let pt: Vec<BigRational> = point.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        self.eval(&pt)
    }

    /// Replaces variable `i` by `subs[i]`, each a polynomial in `target_vars`
    /// variables.
    pub fn substitute(&self, subs: &[Poly], target_vars: usize) -> Poly {
        assert_eq!(subs.len(), self.nvars);
        debug_assert!(subs.iter().all(|p| p.nvars == target_vars));
        let mut out = Poly::zero(target_vars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target_vars, c.clone());
            for (s, &e) in subs.iter().zip(m) {
                for _ in 0..e {
                    t = &t * s;
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Re-indexes into `nvars` variables, sending variable `i` to `offset + i`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Poly {
        assert!(offset + self.nvars <= nvars);
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut nm = vec![0; nvars];
            nm[offset..offset + self.nvars].copy_from_slice(m);
            out.add_term(nm, c.clone());
        }
        out
    }

    fn max_partial_degree(&self) -> u32 {
        self.terms.keys().flat_map(|m| m.iter().copied()).max().unwrap_or(0)
    }

    /// Whether `p(n)` is an even integer for every `n ∈ Z^r`.
    ///
    /// With `D` the largest degree in any single variable, `p` expands in the
    /// basis `∏ C(n_i, k_i)` (`k_i ≤ D`) with coefficients given by forward
    /// differences on the grid `{0..D}^r`; the binomials are integer valued on
    /// all of `Z`, so `p(Z^r) ⊆ 2Z` iff every such coefficient is even.
    pub fn takes_even_values(&self) -> bool {
        let r = self.nvars;
        let side = self.max_partial_degree() as usize + 1;
        let total = side.pow(r as u32);
        let mut grid: Vec<BigRational> = (0..total)
            .map(|flat| {
                let mut pt = vec![0i64; r];
                let mut f = flat;
                for x in pt.iter_mut() {
                    *x = (f % side) as i64;
                    f /= side;
                }
                self.eval_int(&pt)
            })
            .collect();
        // forward differences along each axis, in place
        let mut stride = 1;
        for _ in 0..r {
            for base in 0..total {
                if (base / stride) % side != 0 {
                    continue;
                }
                for k in 1..side {
                    for j in (k..side).rev() {
                        let hi = base + j * stride;
                        let lo = base + (j - 1) * stride;
                        let d = &grid[hi] - &grid[lo];
                        grid[hi] = d;
                    }
                }
            }
            stride *= side;
        }
        grid.iter().all(is_even_integer)
    }

    /// When `p` is constant modulo `2Z` on `Z^r`, that constant in `[0, 2)`.
    pub fn constant_mod2(&self) -> Option<BigRational> {
        let c = self.constant_term();
        let rest = self - &Poly::constant(self.nvars, c.clone());
        rest.takes_even_values().then(|| reduce_mod2(&c))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = c.to_string();
                for (i, &e) in m.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("·n{i}")),
                        _ => s.push_str(&format!("·n{i}^{e}")),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: BTreeMap<String, String>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let key: Vec<String> = m.iter().map(u32::to_string).collect();
                (key.join(","), c.to_string())
            })
            .collect();
        PolyRepr {
            nvars: self.nvars,
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut p = Poly::zero(repr.nvars);
        for (k, v) in repr.terms {
            let m: Monomial = if k.is_empty() {
                Vec::new()
            } else {
                k.split(',')
                    .map(|e| e.trim().parse::<u32>().map_err(serde::de::Error::custom))
                    .collect::<Result<_, _>>()?
            };
            if m.len() != repr.nvars {
                return Err(serde::de::Error::custom("monomial length does not match nvars"));
            }
            let c = parse_rational(&v).map_err(serde::de::Error::custom)?;
            p.add_term(m, c);
        }
        Ok(p)
    }
}
