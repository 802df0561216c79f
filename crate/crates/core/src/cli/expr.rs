//! Expression grammar for polynomials, Laurent polynomials and zeta literals.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' ('-')? power)?
//! atom  := integer | identifier | '(' expr ')'
//! ```
//! `^` binds tightest and is right associative; juxtaposition is an error.

use crate::exactalg::poly::Poly;
use crate::exactalg::scalar::Rational;
use crate::exactalg::zetarat::{factor_poly, ZetaRat, QT};
use crate::exactalg::upoly::UPoly;
use crate::{Error, MultiPoly};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, Error> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().unwrap()), start));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(Error::SyntaxError { pos: i, msg: format!("unexpected character `{}`", c) });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    len: usize,
    allowed: Option<&'a [&'a str]>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.1).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: &str) -> Result<T, Error> {
        Err(Error::SyntaxError { pos: self.pos(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else {
                if matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                    return self.err("implicit multiplication is not allowed; use `*`");
                }
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, Error> {
        let base = self.atom()?;
        if self.eat('^') {
            let exp = if self.eat('-') { Expr::Neg(Box::new(self.power()?)) } else { self.power()? };
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(name)) => {
                if let Some(allowed) = self.allowed {
                    if !allowed.contains(&name.as_str()) {
                        return Err(Error::UnknownVariable(name));
                    }
                }
                self.i += 1;
                Ok(Expr::Var(name))
            }
            Some(Tok::Op('(')) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(t) => Err(Error::SyntaxError { pos, msg: format!("unexpected token {:?}", t) }),
            None => Err(Error::SyntaxError { pos, msg: "unexpected end of input".into() }),
        }
    }
}

/// Parse with an optional whitelist of variable names.
pub fn parse_expr(src: &str, allowed: Option<&[&str]>) -> Result<Expr, Error> {
    let toks = lex(src)?;
    let mut p = Parser { toks, i: 0, len: src.len(), allowed };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl Expr {
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Neg(a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Evaluate an exponent to `a + b·s` with rational `a, b`.
    fn affine(&self) -> Result<(Rational, Rational), Error> {
        let bad = || Error::Invalid("exponent must be affine in s with rational coefficients".into());
        Ok(match self {
            Expr::Num(n) => (Rational::from_integer(n.clone()), Rational::zero()),
            Expr::Var(v) if v == "s" => (Rational::zero(), Rational::one()),
            Expr::Var(v) => return Err(Error::Invalid(format!("variable `{}` in exponent", v))),
            Expr::Neg(a) => {
                let (x, y) = a.affine()?;
                (-x, -y)
            }
            Expr::Add(a, b) => {
                let (x, y) = a.affine()?;
                let (u, v) = b.affine()?;
                (x + u, y + v)
            }
            Expr::Sub(a, b) => {
                let (x, y) = a.affine()?;
                let (u, v) = b.affine()?;
                (x - u, y - v)
            }
            Expr::Mul(a, b) => {
                let (x, y) = a.affine()?;
                let (u, v) = b.affine()?;
                if !y.is_zero() && !v.is_zero() {
                    return Err(bad());
                }
                (&x * &u, x * v + y * u)
            }
            Expr::Div(a, b) => {
                let (x, y) = a.affine()?;
                let (u, v) = b.affine()?;
                if !v.is_zero() || u.is_zero() {
                    return Err(bad());
                }
                (x / &u, y / u)
            }
            Expr::Pow(a, b) => {
                let (x, y) = a.affine()?;
                let (k, kv) = b.affine()?;
                if !y.is_zero() || !kv.is_zero() || !k.is_integer() {
                    return Err(bad());
                }
                (crate::exactalg::scalar::pow_i(&x, k.to_integer().to_i64().ok_or_else(bad)?), Rational::zero())
            }
        })
    }

    fn int_exponent(&self) -> Result<i64, Error> {
        let (a, b) = self.affine()?;
        if !b.is_zero() || !a.is_integer() {
            return Err(Error::Invalid("exponent must be an integer".into()));
        }
        a.to_integer().to_i64().ok_or_else(|| Error::Invalid("exponent too large".into()))
    }

    /// Evaluate as a (Laurent) polynomial over `vars`. Division is only
    /// allowed by nonzero constants.
    pub fn to_poly(&self, vars: &[&str]) -> Result<MultiPoly, Error> {
        Ok(match self {
            Expr::Num(n) => Poly::constant(vars, Rational::from_integer(n.clone())),
            Expr::Var(v) => {
                if !vars.contains(&v.as_str()) {
                    return Err(Error::UnknownVariable(v.clone()));
                }
                Poly::var(vars, v)
            }
            Expr::Neg(a) => a.to_poly(vars)?.neg(),
            Expr::Add(a, b) => a.to_poly(vars)?.add(&b.to_poly(vars)?),
            Expr::Sub(a, b) => a.to_poly(vars)?.sub(&b.to_poly(vars)?),
            Expr::Mul(a, b) => a.to_poly(vars)?.mul(&b.to_poly(vars)?),
            Expr::Div(a, b) => {
                let d = b.to_poly(vars)?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => a.to_poly(vars)?.scale(&(Rational::one() / c)),
                    _ => {
                        if d.is_monomial() {
                            a.to_poly(vars)?.mul(&d.monomial_inverse().unwrap())
                        } else {
                            return Err(Error::Invalid("`/` is only allowed by constants or monomials in polynomial input".into()));
                        }
                    }
                }
            }
            Expr::Pow(a, b) => {
                let k = b.int_exponent()?;
                let base = a.to_poly(vars)?;
                if k >= 0 {
                    base.pow(k as u32)
                } else {
                    base.monomial_inverse()
                        .ok_or_else(|| Error::Invalid("negative exponent on a non-monomial".into()))?
                        .pow((-k) as u32)
                }
            }
        })
    }

    /// Evaluate as a zeta literal in `q`, `t` and exponents `q^(a+b*s)`.
    pub fn to_zeta(&self) -> Result<ZetaRat, Error> {
        Ok(match self {
            Expr::Num(n) => ZetaRat::constant(Rational::from_integer(n.clone())),
            Expr::Var(v) => match v.as_str() {
                "q" | "p" => ZetaRat::q(),
                "t" => ZetaRat::t(),
                _ => return Err(Error::UnknownVariable(v.clone())),
            },
            Expr::Neg(a) => a.to_zeta()?.neg(),
            Expr::Add(a, b) => a.to_zeta()?.add(&b.to_zeta()?),
            Expr::Sub(a, b) => a.to_zeta()?.sub(&b.to_zeta()?),
            Expr::Mul(a, b) => a.to_zeta()?.mul(&b.to_zeta()?),
            Expr::Div(a, b) => a.to_zeta()?.mul(&b.recip_zeta()?),
            Expr::Pow(a, b) => {
                let (k, ks) = b.affine()?;
                if !k.is_integer() || !ks.is_integer() {
                    return Err(Error::Invalid("exponent must have integer coefficients".into()));
                }
                let k = k.to_integer().to_i64().unwrap();
                let ks = ks.to_integer().to_i64().unwrap();
                if ks != 0 {
                    if !matches!(a.as_ref(), Expr::Var(v) if v == "q" || v == "p") {
                        return Err(Error::Invalid("only q may carry an s-dependent exponent".into()));
                    }
                    // q^(k + ks*s) = q^k t^(-ks)
                    return Ok(ZetaRat::monomial(Rational::one(), k as i32, -ks as i32));
                }
                if k >= 0 {
                    let base = a.to_zeta()?;
                    (0..k).fold(ZetaRat::one(), |acc, _| acc.mul(&base))
                } else {
                    let inv = a.recip_zeta()?;
                    (0..-k).fold(ZetaRat::one(), |acc, _| acc.mul(&inv))
                }
            }
        })
    }

    fn recip_zeta(&self) -> Result<ZetaRat, Error> {
        match self {
            Expr::Mul(a, b) => Ok(a.recip_zeta()?.mul(&b.recip_zeta()?)),
            Expr::Div(a, b) => Ok(a.recip_zeta()?.mul(&b.to_zeta()?)),
            Expr::Neg(a) => Ok(a.recip_zeta()?.neg()),
            Expr::Pow(a, b) => {
                let (k, ks) = b.affine()?;
                if ks.is_zero() && k.is_integer() && k > Rational::zero() {
                    let r = a.recip_zeta()?;
                    let k = k.to_integer().to_i64().unwrap();
                    Ok((0..k).fold(ZetaRat::one(), |acc, _| acc.mul(&r)))
                } else {
                    reciprocal(&self.to_zeta()?)
                }
            }
            _ => reciprocal(&self.to_zeta()?),
        }
    }
}

/// Reciprocal of a value whose numerator is a monomial times factors of the
/// form `q^{v+Ns} − 1` and a polynomial in `q` alone.
pub fn reciprocal(z: &ZetaRat) -> Result<ZetaRat, Error> {
    if z.is_zero() {
        return Err(Error::Invalid("division by zero".into()));
    }
    let unsupported = || Error::Invalid("denominator must be a product of q-polynomials and factors q^(v+N*s)-1".into());
    // existing denominators move up
    let mut up = ZetaRat::one();
    for f in z.denominator() {
        up = up.mul_poly(&factor_poly(f.v, f.n).pow(f.multiplicity));
    }
    let qd = z.qden().clone();
    let (m, mut rest) = z.numerator().split_monomial();
    let mut factors = Vec::new();
    loop {
        let (mh, h) = rest.split_monomial();
        if h.max_exp(1) == 0 {
            break;
        }
        let dq = h.max_exp(0).max(1) as i64;
        let dt = h.max_exp(1) as i64;
        let hit = (1..=dq).rev().find_map(|v| {
            (1..=dt).rev().flat_map(|k| [k, -k]).find_map(|n| h.div_exact(&factor_poly(v, n)).map(|q| (v, n, q)))
        });
        match hit {
            Some((v, n, q)) => {
                factors.push((v, n));
                rest = q.shift(&mh);
            }
            None => return Err(unsupported()),
        }
    }
    // rest is now c·q^a t^b · h(q)
    let (m2, h) = rest.split_monomial();
    let deg = h.max_exp(0).max(0) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (e, c) in h.terms() {
        coeffs[e[0] as usize] = c.clone();
    }
    let hq = UPoly::new(coeffs);
    let mut out = up.mul_poly(&Poly::from_terms(
        QT.iter().map(|s| s.to_string()).collect(),
        [(vec![-(m[0] + m2[0]), -(m[1] + m2[1])], Rational::one())],
    ));
    out = out.mul(&ZetaRat::inv_qpoly(&hq));
    for (v, n) in factors {
        out = out.mul(&ZetaRat::inv_factor(v, n, 1));
    }
    let mut qp = Poly::zero(&QT);
    for (i, c) in qd.coeffs().iter().enumerate() {
        qp.add_term(vec![i as i32, 0], c.clone());
    }
    Ok(out.mul_poly(&qp))
}

/// Parse a polynomial over exactly the variables `vars`.
pub fn parse_poly(src: &str, vars: &[&str]) -> Result<MultiPoly, Error> {
    parse_expr(src, Some(vars))?.to_poly(vars)
}

/// Parse a polynomial over `vars` plus any further identifiers, which are
/// appended (sorted) as opaque symbols.
pub fn parse_poly_open(src: &str, vars: &[&str]) -> Result<MultiPoly, Error> {
    let e = parse_expr(src, None)?;
    let mut all: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    for v in e.variables() {
        if !all.contains(&v) {
            all.push(v);
        }
    }
    let refs: Vec<&str> = all.iter().map(|s| s.as_str()).collect();
    e.to_poly(&refs)
}

/// Parse a zeta literal such as `(q^2-1)/(q^2*(q^(2-2*s)-1))`.
pub fn parse_zeta(src: &str) -> Result<ZetaRat, Error> {
    parse_expr(src, Some(&["q", "p", "t", "s"]))?.to_zeta()
}

/// Canonical rendering of a polynomial source string.
pub fn canonical(src: &str, vars: &[&str]) -> Result<String, Error> {
    Ok(parse_poly(src, vars)?.to_string())
}
