//! Rational functions in `(q, t)` with `t = q^{-s}` and a factored denominator.
//!
//! A value is `num(q, t) / (qden(q) · ∏ (q^{v+Ns} − 1)^m)`, where each factor
//! `q^{v+Ns} − 1 = q^v t^{−N} − 1` is kept as the pair `(v, N)` and never
//! expanded. Pole real parts are read off the surviving pairs.

use super::poly::Poly;
use super::scalar::{fmt_rat, int, pow_i, Rational};
use super::upoly::UPoly;
use crate::Error;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

pub const QT: [&str; 2] = ["q", "t"];
const Q: usize = 0;
const T: usize = 1;

/// One factor `q^{v+Ns} − 1` with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DenomFactor {
    pub v: i64,
    #[serde(rename = "n")]
    pub n: i64,
    pub multiplicity: u32,
}

impl DenomFactor {
    /// Real part `−v/N` of the poles of this factor (None when N = 0).
    pub fn real_part(&self) -> Option<Rational> {
        if self.n == 0 {
            None
        } else {
            Some(Rational::new((-self.v).into(), self.n.into()))
        }
    }
}

/// Order `d` and conductor of the character χ = ω restricted to units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    pub order: u32,
    pub conductor: u32,
}

impl Character {
    pub fn trivial() -> Self {
        Character { order: 1, conductor: 1 }
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

/// A family of poles `s = −v/N + 2πik/(N ln q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleDescriptor {
    #[serde(rename = "realpart", serialize_with = "crate::exactalg::ser_rat")]
    pub real_part: Rational,
    pub order: u32,
    /// `(N, v)`
    #[serde(rename = "latticespan")]
    pub lattice_span: (i64, i64),
}

/// Exact rational function of `(q, t)`, `t = q^{-s}`.
#[derive(Clone, Debug)]
pub struct ZetaRat {
    num: Poly<Rational>,
    den: BTreeMap<(i64, i64), u32>,
    qden: UPoly<Rational>,
}

/// Cleared form of the factor `(v, N)`: returns `(P, a)` with
/// `q^v t^{−N} − 1 = t^{−a} P(q, t)` and `P` an ordinary polynomial.
fn cleared(v: i64, n: i64) -> (Poly<Rational>, i32) {
    let one = Poly::one(&QT);
    let qv = Poly::monomial(&QT, vec![v as i32, 0], Rational::one());
    if n > 0 {
        let tn = Poly::monomial(&QT, vec![0, n as i32], Rational::one());
        (qv.sub(&tn), n as i32)
    } else if n < 0 {
        (qv.shift(&[0, (-n) as i32]).sub(&one), 0)
    } else {
        (qv.sub(&one), 0)
    }
}

/// The factor `q^v t^{−N} − 1` as a Laurent polynomial.
pub fn factor_poly(v: i64, n: i64) -> Poly<Rational> {
    let (p, a) = cleared(v, n);
    p.shift(&[0, -a])
}

fn qpoly_to_poly(u: &UPoly<Rational>) -> Poly<Rational> {
    let mut p = Poly::zero(&QT);
    for (i, c) in u.coeffs().iter().enumerate() {
        p.add_term(vec![i as i32, 0], c.clone());
    }
    p
}

impl ZetaRat {
    pub fn zero() -> Self {
        ZetaRat { num: Poly::zero(&QT), den: BTreeMap::new(), qden: UPoly::constant(Rational::one()) }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(&QT, c))
    }

    pub fn q() -> Self {
        Self::from_poly(Poly::var(&QT, "q"))
    }

    pub fn t() -> Self {
        Self::from_poly(Poly::var(&QT, "t"))
    }

    /// `c · q^a t^b`
    pub fn monomial(c: Rational, a: i32, b: i32) -> Self {
        Self::from_poly(Poly::monomial(&QT, vec![a, b], c))
    }

    /// A Laurent polynomial in `(q, t)`; panics if its variables are not `(q, t)`.
    pub fn from_poly(num: Poly<Rational>) -> Self {
        let num = num.with_vars(&QT).expect("numerator must live in (q, t)");
        ZetaRat { num, den: BTreeMap::new(), qden: UPoly::constant(Rational::one()) }
    }

    /// `1 / (q^{v+Ns} − 1)^m`
    pub fn inv_factor(v: i64, n: i64, m: u32) -> Self {
        let mut z = Self::one();
        if m > 0 {
            z.den.insert((v, n), m);
        }
        z
    }

    /// `1 / c(q)` for a nonzero polynomial in `q` alone.
    pub fn inv_qpoly(c: &UPoly<Rational>) -> Self {
        assert!(!c.is_zero());
        let mut z = Self::one();
        z.qden = c.clone();
        z.normalized()
    }

    /// Assemble from parts; the result is normalized.
    pub fn from_parts(num: Poly<Rational>, den: impl IntoIterator<Item = DenomFactor>, qden: UPoly<Rational>) -> Self {
        let mut z = Self::from_poly(num);
        for f in den {
            if f.multiplicity > 0 {
                *z.den.entry((f.v, f.n)).or_insert(0) += f.multiplicity;
            }
        }
        assert!(!qden.is_zero());
        z.qden = qden;
        z.normalized()
    }

    pub fn numerator(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn qden(&self) -> &UPoly<Rational> {
        &self.qden
    }

    pub fn denominator(&self) -> Vec<DenomFactor> {
        self.den.iter().map(|(&(v, n), &m)| DenomFactor { v, n, multiplicity: m }).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `(scalar, a, b)` such that the numerator is `scalar · q^a t^b · P` with `P`
    /// a polynomial without monomial factor and with positive leading coefficient
    /// and coprime integer coefficients.
    pub fn prefactor(&self) -> (Rational, i32, i32) {
        if self.num.is_zero() {
            return (Rational::zero(), 0, 0);
        }
        let (m, _) = self.num.split_monomial();
        (self.scalar_content(), m[Q], m[T])
    }

    fn scalar_content(&self) -> Rational {
        use num_integer::Integer;
        let mut l = num_bigint::BigInt::one();
        let mut g = num_bigint::BigInt::zero();
        for (_, c) in self.num.terms() {
            l = l.lcm(c.denom());
            g = g.gcd(c.numer());
        }
        let sign = if self.num.leading().unwrap().1.is_negative() { -1 } else { 1 };
        Rational::new(g * num_bigint::BigInt::from(sign), l)
    }

    /// Cancel every denominator factor that divides the numerator, and common
    /// factors of `qden` with the numerator's content.
    pub fn normalized(&self) -> Self {
        let mut z = self.clone();
        if z.num.is_zero() {
            return Self::zero();
        }
        // qden: strip powers of q into the numerator and make monic
        let mut k = 0;
        while z.qden.coeff(0).is_zero() {
            z.qden = z.qden.div_exact(&UPoly::x()).unwrap();
            k += 1;
        }
        if k > 0 {
            z.num = z.num.shift(&[-k, 0]);
        }
        let lc = z.qden.lead();
        z.qden = z.qden.monic();
        z.num = z.num.scale(&(Rational::one() / lc));
        if z.qden.deg() > 0 {
            let g = z.q_content().gcd(&z.qden);
            if g.deg() > 0 {
                z.num = z.num.div_exact(&qpoly_to_poly(&g)).unwrap();
                z.qden = z.qden.div_exact(&g).unwrap();
            }
        }
        let keys: Vec<(i64, i64)> = z.den.keys().copied().collect();
        for key in keys {
            let (p, a) = cleared(key.0, key.1);
            loop {
                let m = z.den[&key];
                if m == 0 {
                    break;
                }
                match z.num.shift(&[0, a]).div_exact(&p) {
                    Some(q) => {
                        z.num = q;
                        *z.den.get_mut(&key).unwrap() -= 1;
                    }
                    None => break,
                }
            }
        }
        z.den.retain(|_, m| *m > 0);
        z
    }

    /// gcd over ℚ[q] of the numerator coefficients (as a polynomial in t,
    /// after clearing negative q-powers).
    fn q_content(&self) -> UPoly<Rational> {
        let (_, p) = self.num.split_monomial();
        let mut g = UPoly::zero();
        for (_, c) in p.coeffs_in(T) {
            let mut u = vec![Rational::zero(); (c.max_exp(Q) + 1) as usize];
            for (e, a) in c.terms() {
                u[e[Q] as usize] = a.clone();
            }
            g = g.gcd(&UPoly::new(u));
            if g.deg() == 0 {
                break;
            }
        }
        g
    }

    /// Product of the denominator factors as a Laurent polynomial (including `qden`).
    fn den_poly(&self, skip: &BTreeMap<(i64, i64), u32>) -> Poly<Rational> {
        let mut d = qpoly_to_poly(&self.qden);
        for (&(v, n), &m) in &self.den {
            let have = skip.get(&(v, n)).copied().unwrap_or(0);
            if m > have {
                d = d.mul(&factor_poly(v, n).pow(m - have));
            }
        }
        d
    }

    pub fn neg(&self) -> Self {
        let mut z = self.clone();
        z.num = z.num.neg();
        z
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut den = self.den.clone();
        for (k, &m) in &o.den {
            let e = den.entry(*k).or_insert(0);
            *e = (*e).max(m);
        }
        let g = self.qden.gcd(&o.qden);
        let qa = o.qden.div_exact(&g).unwrap();
        let qb = self.qden.div_exact(&g).unwrap();
        let lift = |z: &ZetaRat, other_q: &UPoly<Rational>| -> Poly<Rational> {
            let mut n = z.num.mul(&qpoly_to_poly(other_q));
            for (&(v, nn), &m) in &den {
                let have = z.den.get(&(v, nn)).copied().unwrap_or(0);
                if m > have {
                    n = n.mul(&factor_poly(v, nn).pow(m - have));
                }
            }
            n
        };
        let num = lift(self, &qa).add(&lift(o, &qb));
        ZetaRat { num, den, qden: self.qden.mul(&qa) }.normalized()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut den = self.den.clone();
        for (k, &m) in &o.den {
            *den.entry(*k).or_insert(0) += m;
        }
        ZetaRat { num: self.num.mul(&o.num), den, qden: self.qden.mul(&o.qden) }.normalized()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut z = self.clone();
        z.num = z.num.scale(c);
        z.normalized()
    }

    /// Multiply by a Laurent polynomial in `(q, t)`.
    pub fn mul_poly(&self, p: &Poly<Rational>) -> Self {
        self.mul(&ZetaRat::from_poly(p.clone()))
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, o: &Self) -> bool {
        let empty = BTreeMap::new();
        let lhs = self.num.mul(&o.den_poly(&empty));
        let rhs = o.num.mul(&self.den_poly(&empty));
        lhs == rhs
    }

    /// Substitute `t ↦ t^{-1}` (that is, `s ↦ −s`).
    pub fn invert_t(&self) -> Self {
        let mut num = Poly::zero(&QT);
        for (e, c) in self.num.terms() {
            num.add_term(vec![e[Q], -e[T]], c.clone());
        }
        let den = self.den.iter().map(|(&(v, n), &m)| ((v, -n), m)).collect();
        ZetaRat { num, den, qden: self.qden.clone() }.normalized()
    }

    /// Exact value at `(q0, t0)`.
    pub fn evaluate(&self, q0: &Rational, t0: &Rational) -> Result<Rational, Error> {
        let mut d = self.qden.eval(q0);
        if d.is_zero() {
            return Err(Error::PoleHit(format!("q-polynomial denominator vanishes at q={}", fmt_rat(q0))));
        }
        for (&(v, n), &m) in &self.den {
            let f = pow_i(q0, v) * pow_i(t0, -n) - Rational::one();
            if f.is_zero() {
                return Err(Error::PoleHit(format!("factor q^({}{:+}*s)-1 vanishes", v, n)));
            }
            d *= num_traits::pow(f, m as usize);
        }
        if t0.is_zero() && self.num.min_exp(T) < 0 {
            return Err(Error::PoleHit("t = 0 with negative t-powers".into()));
        }
        Ok(self.num.eval(&[q0.clone(), t0.clone()]) / d)
    }

    /// Poles from the surviving factors with `N ≠ 0`, sorted by real part.
    pub fn poles(&self, _q0: Option<&Rational>) -> Vec<PoleDescriptor> {
        let z = self.normalized();
        let mut out: Vec<PoleDescriptor> = z
            .den
            .iter()
            .filter(|((_, n), _)| *n != 0)
            .map(|(&(v, n), &m)| PoleDescriptor {
                real_part: Rational::new((-v).into(), n.into()),
                order: m,
                lattice_span: (n, v),
            })
            .collect();
        out.sort_by(|a, b| a.real_part.cmp(&b.real_part).then(a.lattice_span.cmp(&b.lattice_span)));
        out
    }

    /// Coefficients `μ_k` of the two-sided expansion `Σ μ_k t^k` valid on the
    /// band `β < Re s < α`, for `k` in `k_lo..=k_hi`, at `q = q0`.
    ///
    /// Factors with pole real part `≤ β` have roots in `|t| ≥ q^{−β}` and are
    /// expanded in nonnegative powers of `t`; factors with real part `≥ α` have
    /// roots in `|t| ≤ q^{−α}` and are expanded in powers of `t^{−1}`.
    pub fn band_series(
        &self,
        beta: Option<&Rational>,
        alpha: Option<&Rational>,
        k_lo: i64,
        k_hi: i64,
        q0: &Rational,
    ) -> Result<BTreeMap<i64, Rational>, Error> {
        let z = self.normalized();
        let mut scalar = z.qden.eval(q0);
        if scalar.is_zero() {
            return Err(Error::PoleHit("q-polynomial denominator vanishes".into()));
        }
        scalar = Rational::one() / scalar;
        // numerator as a polynomial in t at q0: num = t^shift · nump(t)
        let mut shift: i64 = z.num.min_exp(T) as i64;
        let mut nump = at_q(&z.num, q0, shift);
        let mut dplus = UPoly::constant(Rational::one());
        let mut dminus = UPoly::constant(Rational::one());
        for (&(v, n), &m) in &z.den {
            let f = at_q(&factor_poly(v, n), q0, -(n.max(0)));
            // factor = t^{-max(N,0)} f(t)
            shift -= -(n.max(0)) * m as i64;
            if n == 0 {
                scalar /= num_traits::pow(f.coeff(0), m as usize);
                continue;
            }
            let rp = Rational::new((-v).into(), n.into());
            let goes_plus = beta.is_some_and(|b| rp <= *b);
            let goes_minus = alpha.is_some_and(|a| rp >= *a);
            let fp = f.pow(m);
            if goes_plus {
                dplus = dplus.mul(&fp);
            } else if goes_minus {
                dminus = dminus.mul(&fp);
            } else {
                return Err(Error::BandInvalid(format!("pole with real part {} lies inside the band", fmt_rat(&rp))));
            }
        }
        nump = nump.scale(&scalar);
        let dd = dplus.mul(&dminus);
        let (quot, rem) = nump.divrem(&dd);
        let (g, u, w) = dplus.ext_gcd(&dminus);
        if g.deg() != 0 {
            return Err(Error::BandInvalid("band is empty: pole sets overlap".into()));
        }
        let a = rem.mul(&w).rem(&dplus);
        let b = rem.mul(&u).rem(&dminus);
        let mut out: BTreeMap<i64, Rational> = (k_lo..=k_hi).map(|k| (k, Rational::zero())).collect();
        let mut put = |k: i64, c: Rational| {
            if let Some(e) = out.get_mut(&k) {
                *e += c;
            }
        };
        for (i, c) in quot.coeffs().iter().enumerate() {
            put(shift + i as i64, c.clone());
        }
        // A/D+ as a power series in t
        let need_plus = (k_hi - shift).max(-1);
        if need_plus >= 0 && !a.is_zero() {
            for (i, c) in series_div(&a, &dplus, need_plus as usize + 1).into_iter().enumerate() {
                put(shift + i as i64, c);
            }
        }
        // B/D− as a series in u = 1/t: B(t)/D(t) = u^{d−deg B} B̃(u)/D̃(u)
        if !b.is_zero() {
            let d = dminus.deg();
            let db = b.deg();
            let bt = b.reversed(db as usize + 1);
            let dt = dminus.reversed(d as usize + 1);
            let off = d - db;
            let need_minus = shift - k_lo - off;
            if need_minus >= 0 {
                for (j, c) in series_div(&bt, &dt, need_minus as usize + 1).into_iter().enumerate() {
                    put(shift - off - j as i64, c);
                }
            }
        }
        Ok(out)
    }

    /// Render as plain text, e.g. `(q^2 - 1)/(q^2*(q^(2-2*s) - 1))`.
    pub fn render_plain(&self) -> String {
        self.render(false)
    }

    pub fn render_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        let z = self.normalized();
        if z.num.is_zero() {
            return "0".into();
        }
        let (m, p) = z.num.split_monomial();
        // negative q-powers move to the denominator, the rest stays on top
        let (qa, ta) = (m[Q], m[T]);
        let top_shift = [qa.max(0), ta];
        let top = p.shift(&top_shift);
        let num_s = render_qt(&top, latex);
        let mut den_parts: Vec<String> = Vec::new();
        if qa < 0 {
            den_parts.push(if latex { format!("q^{{{}}}", -qa) } else if qa == -1 { "q".into() } else { format!("q^{}", -qa) });
        }
        if z.qden.deg() > 0 {
            let qp = qpoly_to_poly(&z.qden);
            den_parts.push(format!("({})", render_qt(&qp, latex)));
        }
        for (&(v, n), &mult) in &z.den {
            let base = format!("{} - 1", qpow(v as i32, -n as i32, latex));
            let f = if mult == 1 {
                format!("({})", base)
            } else if latex {
                format!("({})^{{{}}}", base, mult)
            } else {
                format!("({})^{}", base, mult)
            };
            den_parts.push(f);
        }
        if den_parts.is_empty() {
            return num_s;
        }
        if latex {
            let sep = " ";
            return format!("\\frac{{{}}}{{{}}}", num_s, den_parts.join(sep));
        }
        let top_s = if top.nterms() > 1 { format!("({})", num_s) } else { num_s };
        let den_s = if den_parts.len() == 1 && !den_parts[0].starts_with('(') {
            den_parts[0].clone()
        } else if den_parts.len() == 1 {
            den_parts[0].clone()
        } else {
            format!("({})", den_parts.join("*"))
        };
        format!("{}/{}", top_s, den_s)
    }
}

/// `q^a t^b` written as `q^(a - b s)`.
fn qpow(a: i32, b: i32, latex: bool) -> String {
    // exponent of q is a + (-b) s
    let sc = -b;
    let exp = match (a, sc) {
        (a, 0) => format!("{}", a),
        (0, 1) => "s".into(),
        (0, -1) => "-s".into(),
        (0, c) => {
            if latex {
                format!("{}s", c)
            } else {
                format!("{}*s", c)
            }
        }
        (a, 1) => format!("{}+s", a),
        (a, -1) => format!("{}-s", a),
        (a, c) => {
            if latex {
                format!("{}{:+}s", a, c)
            } else {
                format!("{}{:+}*s", a, c)
            }
        }
    };
    if exp == "1" {
        return "q".into();
    }
    if latex {
        format!("q^{{{}}}", exp)
    } else if sc == 0 && a >= 0 {
        format!("q^{}", exp)
    } else {
        format!("q^({})", exp)
    }
}

fn render_qt(p: &Poly<Rational>, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut terms: Vec<(&Vec<i32>, &Rational)> = p.terms().collect();
    // descending in the real exponent of q at s = 0 then by s-coefficient
    terms.sort_by(|x, y| (y.0[Q], -y.0[T]).cmp(&(x.0[Q], -x.0[T])));
    for (i, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        let mono = e[Q] != 0 || e[T] != 0;
        let mag_s = if latex && !mag.is_integer() {
            format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
        } else {
            fmt_rat(&mag)
        };
        if !mono {
            out.push_str(&mag_s);
        } else {
            if !mag.is_one() {
                out.push_str(&mag_s);
                if !latex {
                    out.push('*');
                }
            }
            out.push_str(&qpow(e[Q], e[T], latex));
        }
    }
    out
}

/// Substitute `q = q0` and multiply by `t^{-shift}`; the result must be an
/// ordinary polynomial in `t`.
fn at_q(p: &Poly<Rational>, q0: &Rational, shift: i64) -> UPoly<Rational> {
    let mut c: BTreeMap<i64, Rational> = BTreeMap::new();
    for (e, a) in p.terms() {
        let k = e[T] as i64 - shift;
        assert!(k >= 0, "negative t power after shift");
        *c.entry(k).or_insert_with(Rational::zero) += a * pow_i(q0, e[Q] as i64);
    }
    let deg = c.keys().max().copied().unwrap_or(0);
    UPoly::new((0..=deg).map(|k| c.get(&k).cloned().unwrap_or_else(Rational::zero)).collect())
}

/// First `len` power-series coefficients of `a/d`, `d(0) ≠ 0`.
fn series_div(a: &UPoly<Rational>, d: &UPoly<Rational>, len: usize) -> Vec<Rational> {
    let d0 = d.coeff(0);
    assert!(!d0.is_zero());
    let inv = Rational::one() / d0;
    let mut out: Vec<Rational> = Vec::with_capacity(len);
    for k in 0..len {
        let mut s = a.coeff(k);
        for j in 1..=k.min(d.deg().max(0) as usize) {
            s -= d.coeff(j) * &out[k - j];
        }
        out.push(s * &inv);
    }
    out
}

impl PartialEq for ZetaRat {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for ZetaRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_plain())
    }
}

/// `q^{v+Ns} − 1` as a one-factor value helper: `c/(q^{v+Ns}−1)`.
pub fn over_factor(c: Rational, v: i64, n: i64) -> ZetaRat {
    ZetaRat::inv_factor(v, n, 1).scale(&c)
}

/// Integer helper.
pub fn zint(n: i64) -> ZetaRat {
    ZetaRat::constant(int(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::rat;

    fn qt_poly(terms: &[((i32, i32), i64)]) -> Poly<Rational> {
        Poly::from_terms(
            QT.iter().map(|s| s.to_string()).collect(),
            terms.iter().map(|&((a, b), c)| (vec![a, b], int(c))),
        )
    }

    /// (q^2-1)/(q^2 (q^2 t^2 - 1)), the factor (v=2, N=-2)
    fn case2() -> ZetaRat {
        ZetaRat::from_parts(qt_poly(&[((0, 0), 1), ((-2, 0), -1)]), [DenomFactor { v: 2, n: -2, multiplicity: 1 }], UPoly::constant(int(1)))
    }

    #[test]
    fn additive_identity_and_cancellation() {
        // (q-1)t/(q-t) = (q-1)/(q t^{-1} - 1)
        let z = over_factor(int(1), 1, 1).mul_poly(&qt_poly(&[((1, 0), 1), ((0, 0), -1)]));
        assert!(z.add(&ZetaRat::zero()).equals(&z));
        let qmt = ZetaRat::from_poly(factor_poly(1, 1));
        assert!(ZetaRat::inv_factor(1, 1, 1).mul(&qmt).equals(&ZetaRat::one()));
        assert!(ZetaRat::inv_factor(1, 1, 1).mul(&qmt).denominator().is_empty());
    }

    #[test]
    fn add_two_factors_evaluates_consistently() {
        let a = over_factor(int(1), 1, -1).mul_poly(&qt_poly(&[((1, 0), 1), ((0, 0), -1)]));
        let b = over_factor(int(1), 1, 1).mul_poly(&qt_poly(&[((1, 0), 1), ((0, 0), -1)]));
        let s = a.add(&b);
        assert_eq!(s.denominator().len(), 2);
        let (q0, t0) = (int(3), rat(1, 5));
        assert_eq!(s.evaluate(&q0, &t0).unwrap(), a.evaluate(&q0, &t0).unwrap() + b.evaluate(&q0, &t0).unwrap());
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(case2().evaluate(&int(3), &int(1)).unwrap(), rat(1, 9));
        assert_eq!(ZetaRat::monomial(int(1), -2, 0).evaluate(&int(5), &int(7)).unwrap(), rat(1, 25));
        // 1/(q t - 1) is the factor (1, -1)
        assert!(matches!(ZetaRat::inv_factor(1, -1, 1).evaluate(&int(3), &rat(1, 3)), Err(Error::PoleHit(_))));
    }

    #[test]
    fn pole_lists() {
        let p = case2().poles(None);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].real_part, int(1));
        let p = ZetaRat::inv_factor(1, 1, 2).poles(None);
        assert_eq!((p[0].real_part.clone(), p[0].order), (int(-1), 2));
        let c = ZetaRat::inv_factor(1, 1, 1).mul_poly(&factor_poly(1, 1).mul(&qt_poly(&[((1, 0), 1), ((0, 1), 1)])));
        assert!(c.poles(None).is_empty());
    }

    #[test]
    fn band_series_examples() {
        let z = over_factor(int(1), 1, 1).mul_poly(&qt_poly(&[((1, 0), 1), ((0, 0), -1)]));
        let s = z.band_series(Some(&int(0)), None, 1, 3, &int(3)).unwrap();
        assert_eq!(s[&1], rat(2, 3));
        assert_eq!(s[&2], rat(2, 9));
        assert_eq!(s[&3], rat(2, 27));
        let s = case2().band_series(None, Some(&int(1)), -4, 0, &int(3)).unwrap();
        assert_eq!(s[&-2], rat(8, 81));
        assert_eq!(s[&-4], rat(8, 729));
        assert!(s[&0].is_zero() && s[&-1].is_zero() && s[&-3].is_zero());
        let c = ZetaRat::monomial(int(1), -2, 0);
        assert_eq!(c.band_series(None, None, 0, 0, &int(3)).unwrap()[&0], rat(1, 9));
        assert!(matches!(case2().band_series(None, Some(&int(2)), 0, 1, &int(3)), Err(Error::BandInvalid(_))));
    }

    #[test]
    fn rendering() {
        assert_eq!(case2().render_plain(), "(q^2 - 1)/(q^2*(q^(2-2*s) - 1))");
        let z = ZetaRat::from_parts(qt_poly(&[((0, 0), 1), ((-2, 0), -1)]), [DenomFactor { v: 2, n: 2, multiplicity: 1 }], UPoly::constant(int(1)));
        assert_eq!(z.render_plain(), "(q^2 - 1)/(q^2*(q^(2+2*s) - 1))");
        assert_eq!(z.render_latex(), "\\frac{q^{2} - 1}{q^{2} (q^{2+2s} - 1)}");
    }

    #[test]
    fn invert_t_swaps_factor_signs() {
        let z = case2().invert_t();
        assert_eq!(z.denominator()[0].n, 2);
        assert!(z.invert_t().equals(&case2()));
    }
}
