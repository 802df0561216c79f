//! Exact arithmetic: rationals, multivariate Laurent polynomials, univariate
//! factorization, bivariate algebra and the `(q, t)` rational functions.

pub mod bivariate;
pub mod poly;
pub mod scalar;
pub mod upoly;
pub mod zetarat;

pub use poly::Poly;
pub use scalar::{int, rat, Coeff, ExactField, Rational};
pub use upoly::UPoly;
pub use zetarat::{Character, DenomFactor, PoleDescriptor, ZetaRat};

pub(crate) fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&scalar::fmt_rat(r))
}
