//! Sparse multivariate Laurent polynomials.

use super::scalar::{Coeff, ExactField};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent tuple; entries may be negative.
pub type Exps = Vec<i32>;

/// Sparse multivariate Laurent polynomial over a coefficient ring `C`.
///
/// Terms are keyed by exponent tuples in lexicographic order (first variable
/// most significant). Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    vars: Vec<String>,
    terms: BTreeMap<Exps, C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero(vars: &[&str]) -> Self {
        Self::zero_owned(vars.iter().map(|s| s.to_string()).collect())
    }

    pub fn zero_owned(vars: Vec<String>) -> Self {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: C) -> Self {
        let mut p = Self::zero(vars);
        let n = p.vars.len();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(vars: &[&str]) -> Self {
        Self::constant(vars, C::one())
    }

    /// The variable `name` as a polynomial. Panics if `name` is not in `vars`.
    pub fn var(vars: &[&str], name: &str) -> Self {
        let i = vars.iter().position(|v| *v == name).expect("unknown variable");
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, C::one())
    }

    pub fn monomial(vars: &[&str], exps: Exps, c: C) -> Self {
        let mut p = Self::zero(vars);
        assert_eq!(exps.len(), p.vars.len());
        p.add_term(exps, c);
        p
    }

    /// Build from `(exponents, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms(vars: Vec<String>, terms: impl IntoIterator<Item = (Exps, C)>) -> Self {
        let mut p = Self::zero_owned(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len());
            p.add_term(e, c);
        }
        p
    }

    /// A constant or monomial over the same variables as `self`.
    pub fn like_constant(&self, c: C) -> Self {
        let mut p = Self::zero_owned(self.vars.clone());
        p.add_term(vec![0; self.vars.len()], c);
        p
    }

    pub fn like_monomial(&self, e: Exps, c: C) -> Self {
        let mut p = Self::zero_owned(self.vars.clone());
        p.add_term(e, c);
        p
    }

    pub fn like_zero(&self) -> Self {
        Self::zero_owned(self.vars.clone())
    }

    pub fn like_var(&self, i: usize) -> Self {
        let mut e = vec![0; self.vars.len()];
        e[i] = 1;
        self.like_monomial(e, C::one())
    }

    pub fn add_term(&mut self, e: Exps, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &C)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn as_constant(&self) -> Option<C> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&Exps, &C)> {
        self.terms.iter().next_back()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn max_exp(&self, i: usize) -> i32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn min_exp(&self, i: usize) -> i32 {
        self.terms.keys().map(|e| e[i]).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> i32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Smallest total degree of a term (the order at the origin).
    pub fn order(&self) -> i32 {
        self.terms.keys().map(|e| e.iter().sum()).min().unwrap_or(i32::MAX)
    }

    pub fn is_laurent(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&x| x < 0))
    }

    pub fn neg(&self) -> Self {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return self.like_zero();
        }
        let mut p = self.like_zero();
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c.clone() * k.clone());
        }
        p
    }

    /// Multiply by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials over different variables");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut p = self.like_zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1.clone() * c2.clone());
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.like_constant(C::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Evaluate at a point. Negative exponents divide.
    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t = t * pow_signed(x, k);
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitute the constant `c` for variable `i`; the variable stays in
    /// the variable list with exponent zero.
    pub fn eval_var(&self, i: usize, c: &C) -> Self {
        let mut p = self.like_zero();
        for (e, k) in &self.terms {
            let mut e2 = e.clone();
            e2[i] = 0;
            p.add_term(e2, k.clone() * pow_signed(c, e[i]));
        }
        p
    }

    /// Substitute polynomials (over a common target variable list) for every
    /// variable. A variable appearing with a negative exponent must map to a
    /// monomial. Returns `None` otherwise.
    pub fn compose(&self, images: &[Poly<C>]) -> Option<Poly<C>> {
        assert_eq!(images.len(), self.vars.len());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_default();
        let mut out = Poly::zero_owned(target.clone());
        let one = Poly::from_terms(target.clone(), [(vec![0; target.len()], C::one())]);
        let mut cache: Vec<BTreeMap<i32, Poly<C>>> = vec![BTreeMap::new(); images.len()];
        for (e, c) in &self.terms {
            let mut t = one.scale(c);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = match cache[i].get(&k) {
                    Some(p) => p.clone(),
                    None => {
                        let p = if k > 0 {
                            images[i].pow(k as u32)
                        } else {
                            images[i].monomial_inverse()?.pow((-k) as u32)
                        };
                        cache[i].insert(k, p.clone());
                        p
                    }
                };
                t = t.mul(&pw);
            }
            out = out.add(&t);
        }
        Some(out)
    }

    /// Inverse of a monomial `c x^e` as `c^{-1} x^{-e}`.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if !self.is_monomial() {
            return None;
        }
        let (e, c) = self.leading()?;
        Some(self.like_monomial(e.iter().map(|x| -x).collect(), C::one() / c.clone()))
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut p = self.like_zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            p.add_term(e2, c.clone() * from_i64::<C>(e[i] as i64));
        }
        p
    }

    /// Re-express over a different variable list. Variables of `self` that are
    /// absent from `new_vars` must not occur. Returns `None` if they do.
    pub fn with_vars(&self, new_vars: &[&str]) -> Option<Self> {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| new_vars.iter().position(|w| w == v))
            .collect();
        let mut p = Self::zero(new_vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; new_vars.len()];
            for (i, &k) in e.iter().enumerate() {
                match map[i] {
                    Some(j) => e2[j] = k,
                    None if k == 0 => {}
                    None => return None,
                }
            }
            p.add_term(e2, c.clone());
        }
        Some(p)
    }

    /// Componentwise minimum exponent over all terms (zero tuple for the zero polynomial).
    pub fn min_exps(&self) -> Exps {
        (0..self.vars.len()).map(|i| self.min_exp(i)).collect()
    }

    /// Split off the largest monomial factor: returns `(m, p)` with
    /// `self = x^m · p` and `p` having no monomial factor. Works for Laurent input.
    pub fn split_monomial(&self) -> (Exps, Self) {
        let m = self.min_exps();
        let neg: Exps = m.iter().map(|x| -x).collect();
        (m, self.shift(&neg))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut p = Poly::zero_owned(self.vars.clone());
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    /// Coefficients as polynomials in variable `i`: map from exponent of
    /// variable `i` to the remaining polynomial (variable `i` zeroed).
    pub fn coeffs_in(&self, i: usize) -> BTreeMap<i32, Poly<C>> {
        let mut out: BTreeMap<i32, Poly<C>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] = 0;
            out.entry(e[i])
                .or_insert_with(|| self.like_zero())
                .add_term(e2, c.clone());
        }
        out
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: i32) -> Self {
        let mut p = self.like_zero();
        for (e, c) in &self.terms {
            if e.iter().sum::<i32>() == d {
                p.add_term(e.clone(), c.clone());
            }
        }
        p
    }

    /// Render with a coefficient formatter. Terms appear in descending lex order.
    pub fn render_with(&self, coeff: impl Fn(&C) -> (bool, String), mul: &str, pow: impl Fn(i32) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag) = coeff(c);
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &k) in self.vars.iter().zip(e) {
                if k == 1 {
                    factors.push(v.clone());
                } else if k != 0 {
                    factors.push(format!("{}{}", v, pow(k)));
                }
            }
            let is_one = mag == "1";
            if factors.is_empty() {
                out.push_str(&mag);
            } else {
                if !is_one {
                    out.push_str(&mag);
                    out.push_str(mul);
                }
                out.push_str(&factors.join(mul));
            }
        }
        out
    }
}

impl<C: ExactField> Poly<C> {
    /// Exact division in the Laurent polynomial ring (monomials are units).
    /// Returns `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        self.div_exact_bounded(d, false)
    }

    /// Exact division in the ordinary polynomial ring: the quotient must have
    /// nonnegative exponents.
    pub fn div_exact_poly(&self, d: &Self) -> Option<Self> {
        self.div_exact_bounded(d, true)
    }

    fn div_exact_bounded(&self, d: &Self, nonneg: bool) -> Option<Self> {
        self.check_vars(d);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.like_zero());
        }
        let n = self.vars.len();
        // quotient exponents are confined to [min(p)-min(d), max(p)-max(d)]
        let lo: Exps = (0..n)
            .map(|i| {
                let l = self.min_exp(i) - d.min_exp(i);
                if nonneg {
                    l.max(0)
                } else {
                    l
                }
            })
            .collect();
        let hi: Exps = (0..n).map(|i| self.max_exp(i) - d.max_exp(i)).collect();
        let (de, dc) = {
            let (e, c) = d.leading().unwrap();
            (e.clone(), c.clone())
        };
        let mut r = self.clone();
        let mut q = self.like_zero();
        while let Some((re, rc)) = r.leading() {
            let e: Exps = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            if (0..n).any(|i| e[i] < lo[i] || e[i] > hi[i]) {
                return None;
            }
            let c = rc.clone() / dc.clone();
            let t = self.like_monomial(e, c);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => {
                let inv = C::one() / c.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }
}

fn pow_signed<C: Coeff>(x: &C, k: i32) -> C {
    let base = if k < 0 { C::one() / x.clone() } else { x.clone() };
    num_traits::pow(base, k.unsigned_abs() as usize)
}

/// Convert a small integer into any coefficient ring by repeated addition/doubling.
pub fn from_i64<C: Coeff>(n: i64) -> C {
    let mut acc = C::zero();
    let mut base = C::one();
    let mut m = n.unsigned_abs();
    while m > 0 {
        if m & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        m >>= 1;
    }
    if n < 0 {
        -acc
    } else {
        acc
    }
}

impl fmt::Display for Poly<super::scalar::Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::Signed;
        let s = self.render_with(
            |c| (c.is_negative(), super::scalar::fmt_rat(&c.abs())),
            "*",
            |k| if k < 0 { format!("^({})", k) } else { format!("^{}", k) },
        );
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::{int, rat, Rational};

    fn xy() -> (Poly<Rational>, Poly<Rational>) {
        (Poly::var(&["x", "y"], "x"), Poly::var(&["x", "y"], "y"))
    }

    #[test]
    fn ring_ops_and_display() {
        let (x, y) = xy();
        let f = x.pow(2).sub(&y.pow(2));
        assert_eq!(f.to_string(), "x^2 - y^2");
        let g = x.sub(&y).mul(&x.add(&y));
        assert_eq!(f, g);
        assert_eq!(f.eval(&[int(3), int(1)]), int(8));
    }

    #[test]
    fn exact_division() {
        let (x, y) = xy();
        let f = x.pow(2).sub(&y.pow(2));
        assert_eq!(f.div_exact(&x.sub(&y)), Some(x.add(&y)));
        assert_eq!(f.div_exact_poly(&x), None);
        assert_eq!(f.div_exact(&x).unwrap().mul(&x), f);
        let l = f.shift(&[-3, 1]);
        assert_eq!(l.div_exact(&x.add(&y)), Some(x.sub(&y).shift(&[-3, 1])));
    }

    #[test]
    fn laurent_compose() {
        let (x, y) = xy();
        let h = y.pow(2).mul(&x.pow(2).monomial_inverse().unwrap());
        // (x, y) -> (x, x y) gives y^2
        let img = vec![x.clone(), x.mul(&y)];
        assert_eq!(h.compose(&img).unwrap(), y.pow(2));
        assert!(h.compose(&[x.add(&y), y.clone()]).is_none());
    }

    #[test]
    fn derivative_and_generic_coeffs() {
        let (x, y) = xy();
        let f = x.pow(3).mul(&y).add(&x.scale(&rat(1, 2)));
        assert_eq!(f.derivative(0), x.pow(2).mul(&y).scale(&int(3)).add(&x.like_constant(rat(1, 2))));
        let ff: Poly<f64> = f.map_coeffs(|c| crate::exactalg::scalar::rat_to_f64(c));
        assert!((ff.eval(&[2.0, 1.0]) - 9.0).abs() < 1e-12);
        assert_eq!(from_i64::<i64>(-13), -13);
    }
}
