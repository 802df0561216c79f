//! Certified p-adic numerics: measures of order strata, the zeta
//! coefficient oracle, oscillatory integrals and unit exponential sums.

pub mod engine;
mod fit;
mod measure;
mod oscillatory;

pub use engine::{workers, Domain};
pub use fit::{conductor_estimate, expansion_fit, FitReport, FittedTerm, PredictedTerm, Sample, ZValueRow};
pub use measure::{order_measure_table, order_measure_table_flat, zeta_oracle_coeffs, MeasureTable, OrderBounds};
pub use oscillatory::{exp_sum_units, laurent_as_ratio, oscillatory_eval, OscOptions, ZValue};

use crate::exactalg::scalar::{val_rat, Rational};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// A complex number with a rigorous error radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CertifiedComplex {
    pub re: f64,
    pub im: f64,
    pub err: f64,
}

impl CertifiedComplex {
    pub fn exact(re: f64, im: f64) -> Self {
        CertifiedComplex { re, im, err: 0.0 }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn distance(&self, w: Complex64) -> f64 {
        (self.value() - w).norm()
    }

    /// Whether `w` lies in the certified disc, with slack `tol`.
    pub fn contains(&self, w: Complex64, tol: f64) -> bool {
        self.distance(w) <= self.err + tol
    }

    /// Whether this disc lies inside `outer` (up to `tol`).
    pub fn nested_in(&self, outer: &CertifiedComplex, tol: f64) -> bool {
        self.distance(outer.value()) + self.err <= outer.err + tol
    }
}

/// Fractional part `{w}_p ∈ [0,1)`: the rational with p-power denominator
/// such that `w − {w}_p ∈ ℤ_p`.
pub fn psi_phase(w: &Rational, p: u64) -> Rational {
    if w.is_zero() || val_rat(w, p) >= 0 {
        return Rational::zero();
    }
    let e = (-val_rat(w, p)) as u32;
    let pe = BigInt::from(p).pow(e);
    // w = a / (p^e b) with b a p-unit; {w} = (a b^{-1} mod p^e) / p^e
    let rest = w.denom() / &pe;
    let binv = inv_big(&rest.mod_floor(&pe), &pe);
    let num = (w.numer() * binv).mod_floor(&pe);
    Rational::new(num, pe)
}

fn inv_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

/// The value of `η_p`, a fourth root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum UnitRoot {
    One,
    MinusOne,
    I,
    MinusI,
}

impl UnitRoot {
    pub fn to_complex(self) -> Complex64 {
        match self {
            UnitRoot::One => Complex64::new(1.0, 0.0),
            UnitRoot::MinusOne => Complex64::new(-1.0, 0.0),
            UnitRoot::I => Complex64::new(0.0, 1.0),
            UnitRoot::MinusI => Complex64::new(0.0, -1.0),
        }
    }
}

/// Legendre symbol `(a/p)` for `a` prime to `p`.
pub fn legendre(a: &BigInt, p: u64) -> i32 {
    let pb = BigInt::from(p);
    let r = a.mod_floor(&pb).modpow(&BigInt::from((p - 1) / 2), &pb);
    if r == BigInt::from(1) {
        1
    } else {
        -1
    }
}

/// `η_p(a)`: 1 for even `ord a`; `(a₀/p)` or `i·(a₀/p)` for odd `ord a`
/// according to `p mod 4`, with `a₀` the leading p-adic digit.
pub fn eta_p(a: &Rational, p: u64) -> UnitRoot {
    assert!(!a.is_zero(), "eta_p of zero");
    let v = val_rat(a, p);
    if v % 2 == 0 {
        return UnitRoot::One;
    }
    let pv = BigInt::from(p).pow(v.unsigned_abs() as u32);
    let unit = if v > 0 { a / Rational::from_integer(pv) } else { a * Rational::from_integer(pv) };
    let pb = BigInt::from(p);
    let a0 = (unit.numer().mod_floor(&pb) * inv_big(&unit.denom().abs().mod_floor(&pb), &pb)).mod_floor(&pb);
    let a0 = if unit.denom().is_negative() { (-a0).mod_floor(&pb) } else { a0 };
    let l = legendre(&a0, p);
    match (p % 4, l) {
        (1, 1) => UnitRoot::One,
        (1, _) => UnitRoot::MinusOne,
        (_, 1) => UnitRoot::I,
        _ => UnitRoot::MinusI,
    }
}

/// `Ψ(w) = exp(2πi{w}_p)`.
pub fn psi(w: &Rational, p: u64) -> Complex64 {
    let ph = psi_phase(w, p);
    let x = crate::exactalg::scalar::rat_to_f64(&ph) * std::f64::consts::TAU;
    Complex64::new(x.cos(), x.sin())
}
