//! Coefficient traits and exact rational helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::Neg;

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Coefficient ring for polynomials. Any `num_traits::Num` with negation
/// qualifies: `Rational`, `f64`, `f32`, `BigInt`, `i64`, ...
pub trait Coeff: Num + Neg<Output = Self> + Clone + Debug {}

impl<T> Coeff for T where T: Num + Neg<Output = T> + Clone + Debug {}

/// Marker for coefficient types whose division is exact. Polynomial
/// algorithms that rely on exact cancellation (division, gcd, normalization)
/// are only offered for exact fields.
pub trait ExactField: Coeff + Ord {}

impl ExactField for Rational {}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// `b^e` for an integer exponent of either sign.
pub fn pow_i(b: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(b.clone(), e as usize)
    } else {
        num_traits::pow(b.recip(), (-e) as usize)
    }
}

/// p-adic valuation of a nonzero integer.
pub fn val_int(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn val_rat(x: &Rational, p: u64) -> i64 {
    let num = val_int(x.numer(), p) as i64;
    let den = val_int(x.denom(), p) as i64;
    num - den
}

/// True when `x` has no `p` in its denominator.
pub fn is_p_integral(x: &Rational, p: u64) -> bool {
    !(x.denom() % BigInt::from(p)).is_zero()
}

/// Reduce a p-integral rational modulo `m` (where `m` is a power of `p`).
/// Returns `None` when the denominator is divisible by `p`.
pub fn rat_mod(x: &Rational, m: u128) -> Option<u128> {
    let mb = BigInt::from(m);
    let d = x.denom().mod_floor(&mb);
    let inv = mod_inverse_big(&d, &mb)?;
    let n = x.numer().mod_floor(&mb);
    ((n * inv).mod_floor(&mb)).to_u128()
}

fn mod_inverse_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() && !(-e.gcd.clone()).is_one() {
        return None;
    }
    let x = if e.gcd.is_negative() { -e.x } else { e.x };
    Some(x.mod_floor(m))
}

/// Integer divisors (positive) of `n`, by trial division.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Prime factors (distinct) of a nonzero integer.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let db = BigInt::from(d);
        if (&n % &db).is_zero() {
            out.push(d);
            while (&n % &db).is_zero() {
                n /= &db;
            }
        }
        d += 1;
        if d > 1_000_000 {
            break;
        }
    }
    if n > BigInt::one() {
        if let Some(v) = n.to_u64() {
            out.push(v);
        }
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn rat_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Render a rational as `n` or `n/d`.
pub fn fmt_rat(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        Some(Rational::new(a, b))
    } else {
        Some(Rational::from_integer(s.parse().ok()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(val_rat(&rat(7, 9), 3), -2);
        assert_eq!(val_rat(&rat(18, 5), 3), 2);
        assert!(is_p_integral(&rat(1, 2), 3));
        assert!(!is_p_integral(&rat(1, 3), 3));
    }

    #[test]
    fn modular_reduction() {
        // 1/2 mod 9 = 5
        assert_eq!(rat_mod(&rat(1, 2), 9), Some(5));
        assert_eq!(rat_mod(&rat(1, 3), 9), None);
        assert_eq!(rat_mod(&rat(-1, 1), 27), Some(26));
    }

    #[test]
    fn small_number_theory() {
        assert_eq!(prime_factors(&BigInt::from(360)), vec![2, 3, 5]);
        assert_eq!(divisors(&BigInt::from(12)).len(), 6);
        assert!(is_prime(97) && !is_prime(91));
    }
}
