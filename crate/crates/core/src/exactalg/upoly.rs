//! Dense univariate polynomials, with exact gcd and factorization over ℚ.

use super::scalar::{Coeff, ExactField, Rational};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense univariate polynomial, coefficients from low to high degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly<C> {
    c: Vec<C>,
}

impl<C: Coeff> UPoly<C> {
    pub fn new(mut c: Vec<C>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: vec![] }
    }

    pub fn constant(a: C) -> Self {
        Self::new(vec![a])
    }

    /// `x - a`
    pub fn linear_root(a: C) -> Self {
        Self::new(vec![-a, C::one()])
    }

    pub fn x() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> C {
        self.c.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; `-1` for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lead(&self) -> C {
        self.c.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for a in self.c.iter().rev() {
            acc = acc * x.clone() + a.clone();
        }
        acc
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.c.iter().map(|a| -a.clone()).collect())
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::new(self.c.iter().map(|a| a.clone() * k.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(C::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.clone() * super::poly::from_i64::<C>(i as i64))
                .collect(),
        )
    }

    /// `self(other(x))`
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(other).add(&Self::constant(a.clone()));
        }
        acc
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![C::zero(); k];
        c.extend(self.c.iter().cloned());
        Self::new(c)
    }

    /// Reverse the coefficient list, padded to `len` coefficients.
    pub fn reversed(&self, len: usize) -> Self {
        let mut c: Vec<C> = (0..len).map(|i| self.coeff(i)).collect();
        c.reverse();
        Self::new(c)
    }

    pub fn truncate(&self, len: usize) -> Self {
        Self::new(self.c.iter().take(len).cloned().collect())
    }
}

impl<C: ExactField> UPoly<C> {
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dl = d.lead();
        let dd = d.c.len();
        if r.len() < dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![C::zero(); r.len() - dd + 1];
        for i in (0..q.len()).rev() {
            let k = r[i + dd - 1].clone() / dl.clone();
            if !k.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[i + j] = r[i + j].clone() - k.clone() * b.clone();
                }
            }
            q[i] = k;
        }
        r.truncate(dd - 1);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = C::one() / self.lead();
        self.scale(&inv)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::constant(C::one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(C::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = C::one() / r0.lead();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn squarefree_part(&self) -> Self {
        if self.deg() <= 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).unwrap().monic()
    }

    /// Yun's algorithm: `[(a_1, 1), (a_2, 2), ...]` with `self = lc·∏ a_i^i`,
    /// each `a_i` monic squarefree and pairwise coprime; trivial factors omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.deg() <= 0 {
            return out;
        }
        let f = self.monic();
        let d = f.derivative();
        let a = f.gcd(&d);
        let mut b = f.div_exact(&a).unwrap();
        let mut c = d.div_exact(&a).unwrap();
        let mut i = 1;
        loop {
            let bd = b.derivative();
            let dd = c.sub(&bd);
            if b.deg() <= 0 {
                break;
            }
            let g = b.gcd(&dd);
            if g.deg() > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g).unwrap();
            c = dd.div_exact(&g).unwrap();
            i += 1;
        }
        out
    }

    /// Number of distinct roots in the algebraic closure (= degree of the squarefree part).
    pub fn distinct_root_count(&self) -> usize {
        self.squarefree_part().deg().max(0) as usize
    }
}

impl UPoly<Rational> {
    /// Integer primitive associate with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let l = self.c.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let ints: Vec<BigInt> = self.c.iter().map(|a| (a * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|a| a / &g * &sign).collect()
    }

    pub fn from_integers(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|a| Rational::from_integer(a.clone())).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        let p = self.primitive_integer();
        p.iter().map(|a| a.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// All complex roots (with multiplicity) by the Aberth–Ehrlich iteration.
    pub fn complex_roots(&self) -> Vec<Complex64> {
        aberth(&self.to_f64())
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.deg() <= 0 {
            return vec![];
        }
        let mut sf = self.squarefree_part();
        let mut out = Vec::new();
        // strip the root 0 first
        if sf.coeff(0).is_zero() {
            out.push(Rational::zero());
            sf = sf.div_exact(&UPoly::x()).unwrap();
        }
        if sf.deg() <= 0 {
            return out;
        }
        let ints = sf.primitive_integer();
        let an = ints.last().unwrap().clone();
        for r in aberth(&sf.to_f64()) {
            if r.im.abs() > 1e-6 * (1.0 + r.re.abs()) {
                continue;
            }
            // a rational root p/q has q | an, so an·root is an integer
            let anf = an.to_f64().unwrap_or(f64::MAX);
            let approx = (r.re * anf).round();
            if !approx.is_finite() {
                continue;
            }
            let base = BigInt::from(approx as i128);
            for delta in -2i32..=2 {
                let cand = Rational::new(&base + BigInt::from(delta), an.clone());
                if sf.eval(&cand).is_zero() && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
        out.sort();
        out
    }

    /// Factorization into monic irreducible factors over ℚ with multiplicities.
    pub fn factor(&self) -> Vec<(UPoly<Rational>, u32)> {
        let mut out = Vec::new();
        for (sf, m) in self.squarefree_decomposition() {
            for f in factor_squarefree(&sf) {
                out.push((f, m));
            }
        }
        out
    }

    pub fn is_irreducible(&self) -> bool {
        let f = self.factor();
        f.len() == 1 && f[0].1 == 1
    }
}

/// Split a monic squarefree rational polynomial into monic irreducible factors,
/// by grouping numerical roots and certifying each group by exact division.
fn factor_squarefree(f: &UPoly<Rational>) -> Vec<UPoly<Rational>> {
    let mut out = Vec::new();
    if f.deg() <= 0 {
        return out;
    }
    let mut rest = f.monic();
    for r in rest.rational_roots() {
        let lin = UPoly::linear_root(r);
        rest = rest.div_exact(&lin).unwrap();
        out.push(lin);
    }
    if rest.deg() <= 0 {
        return out;
    }
    if rest.deg() <= 3 {
        // no rational roots and degree ≤ 3 ⇒ irreducible
        out.push(rest);
        return out;
    }
    let mut roots = rest.complex_roots();
    let mut k = 2;
    while 2 * k <= roots.len() {
        let mut found = false;
        for subset in Subsets::new(roots.len(), k) {
            let cand: Vec<Complex64> = subset.iter().map(|&i| roots[i]).collect();
            if let Some(g) = certify_factor(&rest, &cand) {
                rest = rest.div_exact(&g).unwrap();
                let mut keep = Vec::new();
                for (i, r) in roots.iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(*r);
                    }
                }
                roots = keep;
                out.push(g);
                found = true;
                break;
            }
        }
        if !found {
            k += 1;
        }
    }
    if rest.deg() > 0 {
        out.push(rest);
    }
    out
}

fn certify_factor(f: &UPoly<Rational>, roots: &[Complex64]) -> Option<UPoly<Rational>> {
    let mut prod = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
        for (i, c) in prod.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        prod = next;
    }
    let ints = f.primitive_integer();
    let an = ints.last()?.to_f64()?;
    let mut coeffs = Vec::new();
    for c in &prod {
        let v = c.re * an;
        if c.im.abs() * an.abs() > 1e-3 || !v.is_finite() {
            return None;
        }
        coeffs.push(Rational::from_integer(BigInt::from(v.round() as i128)));
    }
    let g = UPoly::new(coeffs).monic();
    if g.deg() <= 0 {
        return None;
    }
    f.div_exact(&g).map(|_| g)
}

struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let cur = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(cur)
    }
}

/// Aberth–Ehrlich simultaneous root finder; `c` low-to-high, leading nonzero.
pub fn aberth(c: &[f64]) -> Vec<Complex64> {
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return vec![];
    }
    let lead = c[n];
    let a: Vec<Complex64> = c.iter().map(|x| Complex64::new(x / lead, 0.0)).collect();
    // Cauchy bound
    let bound = 1.0 + a[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(0.5 * bound, th)
        })
        .collect();
    let da: Vec<Complex64> = (1..=n).map(|i| a[i] * i as f64).collect();
    let eval = |p: &[Complex64], x: Complex64| p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &b| acc * x + b);
    for _ in 0..500 {
        let mut maxstep: f64 = 0.0;
        for i in 0..n {
            let pz = eval(&a, z[i]);
            let dpz = eval(&da, z[i]);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / dpz;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += d.inv();
                    }
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                maxstep = maxstep.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if maxstep < 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::{int, rat};

    fn p(c: &[i64]) -> UPoly<Rational> {
        UPoly::new(c.iter().map(|&a| int(a)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let f = p(&[-1, 0, 1]); // x^2 - 1
        let g = p(&[-1, 1]);
        let (q, r) = f.divrem(&g);
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&p(&[1, 2, 1])), p(&[1, 1]));
        let (h, s, t) = f.ext_gcd(&p(&[2, 1]));
        assert_eq!(s.mul(&f).add(&t.mul(&p(&[2, 1]))), h);
        assert_eq!(h, p(&[1]));
    }

    #[test]
    fn roots_and_factors() {
        let f = p(&[-6, 1, 3, 2]).mul(&p(&[1, 0, 1])); // (2x^3+3x^2+x-6)(x^2+1)
        let rr = f.rational_roots();
        assert_eq!(rr, vec![rat(1, 1)]);
        let x4 = p(&[1, 0, 0, 0, 1]);
        assert!(x4.is_irreducible());
        let g = p(&[4, 0, 0, 0, 1]); // x^4+4 = (x^2+2x+2)(x^2-2x+2)
        let fs = g.factor();
        assert_eq!(fs.len(), 2);
        let sq = p(&[-1, 1]).pow(3).mul(&p(&[2, 1]));
        let d = sq.squarefree_decomposition();
        assert_eq!(d, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 3)]);
    }

    #[test]
    fn generic_over_f64() {
        let f: UPoly<f64> = UPoly::new(vec![-2.0, 0.0, 1.0]);
        assert!((f.eval(&2f64.sqrt())).abs() < 1e-12);
        assert_eq!(f.derivative(), UPoly::new(vec![0.0, 2.0]));
    }
}
