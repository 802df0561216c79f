//! Igusa local zeta functions of meromorphic functions `f/g`: exact formulas
//! from resolution data, plane-curve resolution by blow-ups, and certified
//! p-adic numerics to check both.

pub mod cli;
pub mod curveres;
pub mod exactalg;
pub mod padicnum;
pub mod resolution;
pub mod zeta;

pub use exactalg::poly::Poly;
pub use exactalg::scalar::Rational;
pub use exactalg::zetarat::ZetaRat;

/// Multivariate Laurent polynomial with rational coefficients.
pub type MultiPoly = Poly<Rational>;

/// Errors raised across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("pole hit: {0}")]
    PoleHit(String),
    #[error("band invalid: {0}")]
    BandInvalid(String),
    #[error("character data needed: {0}")]
    NeedsCharacterData(String),
    #[error("stratum without point count: {0}")]
    MissingCounts(String),
    #[error("stratum without Grothendieck class: {0}")]
    MissingClasses(String),
    #[error("class is not a polynomial in L: {0}")]
    NonPolynomialClass(String),
    #[error("stratum without Euler characteristic: {0}")]
    MissingEuler(String),
    #[error("non-rational blow-up center with minimal polynomial {minpoly}")]
    NonRationalCenter { minpoly: String },
    #[error("more than {0} blow-ups")]
    DepthExceeded(usize),
    #[error("point not on chart: {0}")]
    PointNotOnChart(String),
    #[error("bad prime {p}: {reason}")]
    BadPrime { p: u64, reason: String },
    #[error("Euler characteristic unsupported: {0}")]
    UnsupportedEuler(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("non-rational special point: {0}")]
    NonRationalSpecialPoint(String),
    #[error("budget of {budget} classes exceeded")]
    BudgetExceeded { budget: u64, partial: Option<padicnum::CertifiedComplex> },
    #[error("ill-conditioned fit: {0}")]
    IllConditioned(String),
    #[error("syntax error at {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
