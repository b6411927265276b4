//! Cyclotomic polynomials and reduction modulo them.

use num_bigint::BigInt;
use num_traits::{One, Zero};

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
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

/// Möbius function.
fn mobius(mut n: u64) -> i8 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn mul_binomial(poly: &[BigInt], d: usize) -> Vec<BigInt> {
    // poly * (x^d - 1)
    let mut out = vec![BigInt::zero(); poly.len() + d];
    for (i, c) in poly.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

fn div_binomial(poly: &[BigInt], d: usize) -> Vec<BigInt> {
    // exact quotient poly / (x^d - 1), highest coefficient first
    let deg = poly.len() - 1;
    let qlen = deg + 1 - d;
    let mut rem: Vec<BigInt> = poly.to_vec();
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + d].clone();
        if !c.is_zero() {
            rem[i + d] -= &c;
            rem[i] += &c;
            q[i] = c;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    q
}

/// Integer coefficients of `Φ_n`, lowest degree first.
///
/// Built from `Φ_n = ∏_{d | n} (x^d - 1)^{μ(n/d)}`: all numerator factors are
/// multiplied out, then each denominator factor is removed by exact division.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let divs = divisors(n);
    let mut poly = vec![BigInt::one()];
    for &d in &divs {
        if mobius(n / d) == 1 {
            poly = mul_binomial(&poly, d as usize);
        }
    }
    for &d in &divs {
        if mobius(n / d) == -1 {
            poly = div_binomial(&poly, d as usize);
        }
    }
    poly
}

/// Reduces `Σ coeffs[j] x^j` modulo the monic `modulus` in place and reports
/// whether the remainder vanishes.
pub fn reduces_to_zero(mut coeffs: Vec<BigInt>, modulus: &[BigInt]) -> bool {
    let m = modulus.len() - 1;
    if coeffs.len() > m {
        for i in (m..coeffs.len()).rev() {
            if coeffs[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut coeffs[i]);
            for (j, mj) in modulus.iter().enumerate().take(m) {
                if !mj.is_zero() {
                    coeffs[i - m + j] -= &c * mj;
                }
            }
        }
        coeffs.truncate(m);
    }
    coeffs.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        let p = cyclotomic_polynomial(105);
        assert_eq!(p.len(), 49);
        assert!(p.contains(&BigInt::from(-2)));
    }

    #[test]
    fn product_over_divisors_is_x_n_minus_one() {
        for n in 1..=30u64 {
            let mut prod = vec![BigInt::one()];
            for d in divisors(n) {
                let phi = cyclotomic_polynomial(d);
                let mut out = vec![BigInt::zero(); prod.len() + phi.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in phi.iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                prod = out;
            }
            let mut expected = vec![BigInt::zero(); n as usize + 1];
            expected[0] = BigInt::from(-1);
            expected[n as usize] = BigInt::one();
            assert_eq!(prod, expected, "n = {n}");
        }
    }

    #[test]
    fn mobius_values() {
        let got: Vec<i8> = (1..=10).map(mobius).collect();
        assert_eq!(got, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }
}
