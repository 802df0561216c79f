//! Bivariate algebra over ℚ: gcd, factorization, resultants and solving of
//! zero-dimensional systems, with a small number-field layer for gcds at
//! algebraic points.

use super::poly::Poly;
use super::scalar::{int, Rational};
use super::upoly::UPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub const XY: [&str; 2] = ["x", "y"];

pub fn x() -> Poly<Rational> {
    Poly::var(&XY, "x")
}

pub fn y() -> Poly<Rational> {
    Poly::var(&XY, "y")
}

pub fn cst(c: Rational) -> Poly<Rational> {
    Poly::constant(&XY, c)
}

/// Coefficients of `p` as a polynomial in variable `main`, each a univariate
/// polynomial in the other variable. `p` must have nonnegative exponents.
pub fn to_nested(p: &Poly<Rational>, main: usize) -> Vec<UPoly<Rational>> {
    let other = 1 - main;
    let d = p.max_exp(main).max(0) as usize;
    let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); d + 1];
    for (e, c) in p.terms() {
        let (i, j) = (e[main] as usize, e[other] as usize);
        let r = &mut rows[i];
        if r.len() <= j {
            r.resize(j + 1, Rational::zero());
        }
        r[j] = c.clone();
    }
    rows.into_iter().map(UPoly::new).collect()
}

pub fn from_nested(rows: &[UPoly<Rational>], main: usize) -> Poly<Rational> {
    let mut p = Poly::zero(&XY);
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in r.coeffs().iter().enumerate() {
            let mut e = vec![0; 2];
            e[main] = i as i32;
            e[1 - main] = j as i32;
            p.add_term(e, c.clone());
        }
    }
    p
}

/// Embed a univariate polynomial as a polynomial in variable `var`.
pub fn from_univariate(u: &UPoly<Rational>, var: usize) -> Poly<Rational> {
    let mut p = Poly::zero(&XY);
    for (j, c) in u.coeffs().iter().enumerate() {
        let mut e = vec![0; 2];
        e[var] = j as i32;
        p.add_term(e, c.clone());
    }
    p
}

/// Restrict to a univariate polynomial in `var` after fixing the other
/// variable at `c`.
pub fn restrict(p: &Poly<Rational>, var: usize, c: &Rational) -> UPoly<Rational> {
    let other = 1 - var;
    let q = p.eval_var(other, c);
    let d = q.max_exp(var).max(0) as usize;
    let mut v = vec![Rational::zero(); d + 1];
    for (e, a) in q.terms() {
        v[e[var] as usize] += a;
    }
    UPoly::new(v)
}

/// The polynomial as univariate if it involves only variable `var`.
pub fn as_univariate(p: &Poly<Rational>, var: usize) -> Option<UPoly<Rational>> {
    if p.terms().any(|(e, _)| e[1 - var] != 0) {
        return None;
    }
    Some(restrict(p, var, &Rational::zero()))
}

/// Normalize to primitive integer coefficients with positive leading coefficient.
pub fn normalize(p: &Poly<Rational>) -> Poly<Rational> {
    if p.is_zero() {
        return p.clone();
    }
    let mut l = BigInt::one();
    let mut g = BigInt::zero();
    for (_, c) in p.terms() {
        l = l.lcm(c.denom());
    }
    for (_, c) in p.terms() {
        g = g.gcd(&(c * Rational::from_integer(l.clone())).to_integer());
    }
    let mut s = Rational::new(l, g);
    if p.leading().unwrap().1.is_negative() {
        s = -s;
    }
    p.scale(&s)
}

fn content(rows: &[UPoly<Rational>]) -> UPoly<Rational> {
    rows.iter().fold(UPoly::zero(), |g, r| g.gcd(r))
}

fn nested_is_zero(rows: &[UPoly<Rational>]) -> bool {
    rows.iter().all(|r| r.is_zero())
}

fn trim(mut rows: Vec<UPoly<Rational>>) -> Vec<UPoly<Rational>> {
    while rows.last().is_some_and(|r| r.is_zero()) {
        rows.pop();
    }
    rows
}

fn prem(a: &[UPoly<Rational>], b: &[UPoly<Rational>]) -> Vec<UPoly<Rational>> {
    let mut r: Vec<UPoly<Rational>> = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !nested_is_zero(&r) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (j, bj) in b.iter().enumerate() {
            r[j + shift] = r[j + shift].sub(&bj.mul(&lr));
        }
        r = trim(r);
    }
    r
}

/// Monic-normalized gcd in ℚ[x, y] (result has primitive integer coefficients).
pub fn gcd(a: &Poly<Rational>, b: &Poly<Rational>) -> Poly<Rational> {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let main = 0;
    let mut na = trim(to_nested(a, main));
    let mut nb = trim(to_nested(b, main));
    let ca = content(&na);
    let cb = content(&nb);
    let cg = ca.gcd(&cb);
    na = na.iter().map(|r| r.div_exact(&ca).unwrap()).collect();
    nb = nb.iter().map(|r| r.div_exact(&cb).unwrap()).collect();
    if na.len() < nb.len() {
        std::mem::swap(&mut na, &mut nb);
    }
    while nb.len() > 1 {
        let r = prem(&na, &nb);
        if nested_is_zero(&r) {
            break;
        }
        let cr = content(&r);
        let r: Vec<UPoly<Rational>> = r.iter().map(|c| c.div_exact(&cr).unwrap()).collect();
        na = nb;
        nb = r;
    }
    let g = if nb.len() == 1 {
        vec![UPoly::constant(Rational::one())]
    } else {
        nb
    };
    let gp = from_nested(&g, main).mul(&from_univariate(&cg, 1));
    normalize(&gp)
}

/// Exact division of bivariate polynomials (ordinary polynomial ring).
pub fn div(a: &Poly<Rational>, b: &Poly<Rational>) -> Option<Poly<Rational>> {
    a.div_exact_poly(b)
}

/// Squarefree decomposition `[(a_i, i)]` of a polynomial, ignoring constants.
pub fn squarefree_decomposition(f: &Poly<Rational>) -> Vec<(Poly<Rational>, u32)> {
    let mut out = Vec::new();
    let mut rest = normalize(f);
    let mut mult = 1u32;
    // repeatedly peel: rest = ∏ a_i^i; g = gcd(rest, rest') over both derivatives
    while !rest.is_constant() {
        let g = gcd(&gcd(&rest, &rest.derivative(0)), &rest.derivative(1));
        let sf = div(&rest, &g).expect("gcd divides");
        // sf = ∏ a_i (all i ≥ mult); factors of multiplicity exactly `mult`
        let next_sf = gcd(&sf, &g);
        let exact = div(&sf, &next_sf).expect("gcd divides");
        if !exact.is_constant() {
            out.push((normalize(&exact), mult));
        }
        rest = g;
        mult += 1;
    }
    out
}

/// Factorization over ℚ: `(c, [(f_i, m_i)])` with `f = c ∏ f_i^{m_i}`, each `f_i`
/// irreducible with primitive integer coefficients and positive leading term.
pub fn factor(f: &Poly<Rational>) -> (Rational, Vec<(Poly<Rational>, u32)>) {
    assert!(!f.is_zero());
    let mut out: Vec<(Poly<Rational>, u32)> = Vec::new();
    for (sf, m) in squarefree_decomposition(f) {
        for g in factor_squarefree(&sf) {
            out.push((g, m));
        }
    }
    out.sort_by(|a, b| a.0.to_string().cmp(&b.0.to_string()));
    let mut prod = cst(Rational::one());
    for (g, m) in &out {
        prod = prod.mul(&g.pow(*m));
    }
    let c = f.leading().unwrap().1.clone() / prod.leading().unwrap().1.clone();
    (c, out)
}

fn factor_squarefree(f: &Poly<Rational>) -> Vec<Poly<Rational>> {
    let f = normalize(f);
    if f.is_constant() {
        return vec![];
    }
    // univariate cases
    for var in 0..2 {
        if let Some(u) = as_univariate(&f, var) {
            return u.factor().into_iter().map(|(g, _)| normalize(&from_univariate(&g, var))).collect();
        }
    }
    // monomial-free content in each variable
    let nx = to_nested(&f, 0);
    let cy = content(&nx);
    if cy.deg() > 0 {
        let mut out = factor_squarefree(&from_univariate(&cy, 1));
        let rest = div(&f, &from_univariate(&cy, 1)).unwrap();
        out.extend(factor_squarefree(&rest));
        return out;
    }
    let ny = to_nested(&f, 1);
    let cx = content(&ny);
    if cx.deg() > 0 {
        let mut out = factor_squarefree(&from_univariate(&cx, 0));
        let rest = div(&f, &from_univariate(&cx, 0)).unwrap();
        out.extend(factor_squarefree(&rest));
        return out;
    }
    let d = f.total_degree();
    let top = f.homogeneous_part(d);
    // shear y -> y + c x so the x^d coefficient becomes a nonzero constant
    let mut c = Rational::zero();
    let mut k = 0i64;
    loop {
        let lc = top.eval(&[Rational::one(), c.clone()]);
        if !lc.is_zero() {
            break;
        }
        k += 1;
        c = int(if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) });
    }
    let sheared = f.compose(&[x(), y().add(&x().scale(&c))]).unwrap();
    // specialize y = y0 keeping squarefreeness
    let mut y0 = Rational::zero();
    let mut k = 0i64;
    loop {
        let u = restrict(&sheared, 0, &y0);
        if u.deg() == d as i64 && u.gcd(&u.derivative()).deg() == 0 {
            break;
        }
        k += 1;
        y0 = int(if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) });
    }
    let h = sheared.compose(&[x(), y().add(&cst(y0.clone()))]).unwrap();
    let h = h.scale(&(Rational::one() / h.coeff(&[d, 0])));
    let h0 = restrict(&h, 0, &Rational::zero());
    let univ: Vec<UPoly<Rational>> = h0.factor().into_iter().map(|(g, _)| g).collect();
    let back = |g: &Poly<Rational>| -> Poly<Rational> {
        // F(x, Y) = H(x, Y - y0 - c x)
        let img = y().sub(&cst(y0.clone())).sub(&x().scale(&c));
        normalize(&g.compose(&[x(), img]).unwrap())
    };
    if univ.len() == 1 {
        return vec![normalize(&f)];
    }
    let prec = h.max_exp(1) as usize + 1;
    let lifted = hensel_lift(&to_series(&h), &univ, prec);
    let mut cands: Vec<Poly<Rational>> = lifted.iter().map(|l| from_series(l, prec)).collect();
    let mut rest = h.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= cands.len() {
        let mut hit = None;
        for sub in subsets(cands.len(), size) {
            let mut prod = to_series(&cst(Rational::one()));
            for &i in &sub {
                prod = series_mul(&prod, &to_series(&cands[i]), prec);
            }
            let g = from_series(&prod, prec);
            if let Some(q) = div(&rest, &g) {
                hit = Some((sub, g, q));
                break;
            }
        }
        match hit {
            Some((sub, g, q)) => {
                found.push(back(&g));
                rest = q;
                cands = cands.into_iter().enumerate().filter(|(i, _)| !sub.contains(i)).map(|(_, c)| c).collect();
            }
            None => size += 1,
        }
    }
    if !rest.is_constant() {
        found.push(back(&rest));
    }
    found
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Power series in `y` with coefficients in ℚ[x]: index = power of `y`.
type Series = Vec<UPoly<Rational>>;

fn to_series(p: &Poly<Rational>) -> Series {
    to_nested(p, 1)
}

fn from_series(s: &Series, prec: usize) -> Poly<Rational> {
    from_nested(&s[..s.len().min(prec)], 1)
}

fn series_mul(a: &Series, b: &Series, prec: usize) -> Series {
    let mut out = vec![UPoly::zero(); prec.min(a.len() + b.len())];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            if i + j < out.len() {
                out[i + j] = out[i + j].add(&ai.mul(bj));
            }
        }
    }
    out
}

/// Lift `h ≡ ∏ factors (mod y)` to precision `y^prec`; factors monic in x, pairwise coprime.
fn hensel_lift(h: &Series, factors: &[UPoly<Rational>], prec: usize) -> Vec<Series> {
    if factors.len() == 1 {
        let mut s = h.clone();
        s.truncate(prec);
        return vec![s];
    }
    let a0 = factors[0].clone();
    let b0 = factors[1..].iter().fold(UPoly::constant(Rational::one()), |acc, f| acc.mul(f));
    let (g, s, t) = a0.ext_gcd(&b0);
    assert_eq!(g.deg(), 0, "factors must be coprime");
    let mut a: Series = vec![a0.clone()];
    let mut b: Series = vec![b0.clone()];
    for k in 1..prec {
        let ab = series_mul(&a, &b, k + 1);
        let hk = h.get(k).cloned().unwrap_or_else(UPoly::zero);
        let e = hk.sub(&ab.get(k).cloned().unwrap_or_else(UPoly::zero));
        if e.is_zero() {
            a.push(UPoly::zero());
            b.push(UPoly::zero());
            continue;
        }
        let da = t.mul(&e).rem(&a0);
        let db = e.sub(&b0.mul(&da)).div_exact(&a0).expect("Hensel step");
        a.push(da);
        b.push(db);
    }
    let mut out = vec![a];
    out.extend(hensel_lift(&b, &factors[1..], prec));
    let _ = s;
    out
}

/// Determinant over ℚ by Gaussian elimination.
pub fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::one();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero());
        let Some(r) = piv else { return Rational::zero() };
        if r != c {
            m.swap(r, c);
            d = -d;
        }
        let pv = m[c][c].clone();
        d *= &pv;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pv;
            for k in c..n {
                let v = &m[c][k] * &f;
                m[r][k] -= v;
            }
        }
    }
    d
}

fn sylvester(a: &[Rational], b: &[Rational]) -> Vec<Vec<Rational>> {
    // a, b: coefficient lists high-to-low with formal degrees
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![Rational::zero(); size];
        for (j, c) in a.iter().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![Rational::zero(); size];
        for (j, c) in b.iter().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    rows
}

/// Resultant with respect to variable `elim`, as a polynomial in the other variable.
pub fn resultant(a: &Poly<Rational>, b: &Poly<Rational>, elim: usize) -> UPoly<Rational> {
    let keep = 1 - elim;
    let (m, n) = (a.max_exp(elim) as usize, b.max_exp(elim) as usize);
    if m == 0 && n == 0 {
        return UPoly::constant(Rational::one());
    }
    if m == 0 {
        return restrict(a, keep, &Rational::zero()).pow(n as u32).compose(&UPoly::x());
    }
    if n == 0 {
        return restrict(b, keep, &Rational::zero()).pow(m as u32).compose(&UPoly::x());
    }
    let na = to_nested(a, elim);
    let nb = to_nested(b, elim);
    let bound = (a.max_exp(keep) as usize) * n + (b.max_exp(keep) as usize) * m;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..=bound {
        let x0 = int(i as i64);
        let ca: Vec<Rational> = (0..=m).rev().map(|k| na.get(k).map(|r| r.eval(&x0)).unwrap_or_else(Rational::zero)).collect();
        let cb: Vec<Rational> = (0..=n).rev().map(|k| nb.get(k).map(|r| r.eval(&x0)).unwrap_or_else(Rational::zero)).collect();
        ys.push(det(sylvester(&ca, &cb)));
        xs.push(x0);
    }
    interpolate(&xs, &ys)
}

/// Newton interpolation through the given nodes.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> UPoly<Rational> {
    let n = xs.len();
    let mut coef: Vec<Rational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = UPoly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = p.mul(&UPoly::linear_root(xs[i].clone())).add(&UPoly::constant(coef[i].clone()));
    }
    p
}

/// Element arithmetic in ℚ(α) = ℚ[x]/(φ), φ monic irreducible.
#[derive(Clone, Debug)]
pub struct NumberField {
    pub minpoly: UPoly<Rational>,
}

impl NumberField {
    pub fn new(minpoly: UPoly<Rational>) -> Self {
        NumberField { minpoly: minpoly.monic() }
    }

    pub fn reduce(&self, a: &UPoly<Rational>) -> UPoly<Rational> {
        a.rem(&self.minpoly)
    }

    pub fn mul(&self, a: &UPoly<Rational>, b: &UPoly<Rational>) -> UPoly<Rational> {
        a.mul(b).rem(&self.minpoly)
    }

    pub fn inv(&self, a: &UPoly<Rational>) -> UPoly<Rational> {
        let (g, s, _) = a.ext_gcd(&self.minpoly);
        assert_eq!(g.deg(), 0, "zero divisor in number field");
        s.rem(&self.minpoly)
    }

    /// Evaluate a bivariate polynomial at `var_fixed = α`, giving a polynomial
    /// in the other variable with coefficients in the field.
    pub fn specialize(&self, p: &Poly<Rational>, var_fixed: usize) -> Vec<UPoly<Rational>> {
        let other = 1 - var_fixed;
        let nested = to_nested(p, other);
        let mut out: Vec<UPoly<Rational>> = nested.iter().map(|r| self.reduce(r)).collect();
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }

    fn poly_rem(&self, a: &[UPoly<Rational>], b: &[UPoly<Rational>]) -> Vec<UPoly<Rational>> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let inv = self.inv(&b[db]);
        while r.len() > db {
            let dr = r.len() - 1;
            let k = self.mul(&r[dr], &inv);
            for (j, bj) in b.iter().enumerate() {
                let t = self.mul(&k, bj);
                r[dr - db + j] = r[dr - db + j].sub(&t);
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        r
    }

    /// Degree of the gcd of polynomials over the field (−1 if all zero).
    pub fn gcd_degree(&self, polys: &[Vec<UPoly<Rational>>]) -> i64 {
        let mut g: Vec<UPoly<Rational>> = Vec::new();
        for p in polys {
            let mut a = g.clone();
            let mut b = p.clone();
            while !b.is_empty() {
                let r = self.poly_rem(&a, &b);
                a = b;
                b = r;
            }
            g = a;
            if g.len() == 1 {
                return 0;
            }
        }
        g.len() as i64 - 1
    }
}

/// Solutions of a zero-dimensional system over ℚ̄.
#[derive(Clone, Debug, Default)]
pub struct Solutions {
    pub rational: Vec<(Rational, Rational)>,
    /// Minimal polynomials (of the x- or y-coordinate) certifying non-rational solutions.
    pub nonrational: Vec<UPoly<Rational>>,
}

/// Solve `p_1 = … = p_m = 0`. Returns `None` if the system has a common
/// curve component (not zero-dimensional).
pub fn solve(polys: &[Poly<Rational>]) -> Option<Solutions> {
    let polys: Vec<Poly<Rational>> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if polys.is_empty() {
        return None;
    }
    if polys.iter().any(|p| p.is_constant()) {
        return Some(Solutions::default());
    }
    let mut g = polys[0].clone();
    for p in &polys[1..] {
        g = gcd(&g, p);
    }
    if !g.is_constant() {
        return None;
    }
    // eliminate y: gcd of resultants of the first polynomial with the others
    let mut ex = UPoly::zero();
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            ex = ex.gcd(&resultant(&polys[i], &polys[j], 1));
        }
    }
    let mut sol = Solutions::default();
    if ex.is_zero() {
        return None;
    }
    for (phi, _) in ex.factor() {
        if phi.deg() == 1 {
            let x0 = -phi.coeff(0) / phi.coeff(1);
            let mut gy = UPoly::zero();
            for p in &polys {
                gy = gy.gcd(&restrict(p, 1, &x0));
            }
            if gy.deg() <= 0 {
                continue;
            }
            for (psi, _) in gy.factor() {
                if psi.deg() == 1 {
                    sol.rational.push((x0.clone(), -psi.coeff(0) / psi.coeff(1)));
                } else {
                    sol.nonrational.push(psi);
                }
            }
        } else {
            let nf = NumberField::new(phi.clone());
            let sp: Vec<Vec<UPoly<Rational>>> = polys.iter().map(|p| nf.specialize(p, 0)).collect();
            if nf.gcd_degree(&sp) > 0 {
                sol.nonrational.push(phi);
            }
        }
    }
    sol.rational.sort();
    sol.rational.dedup();
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::rat;

    fn p(src: &[((i32, i32), i64)]) -> Poly<Rational> {
        Poly::from_terms(XY.iter().map(|s| s.to_string()).collect(), src.iter().map(|&((a, b), c)| (vec![a, b], int(c))))
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = x().sub(&y()).mul(&x().add(&y()));
        let b = x().sub(&y()).mul(&x().add(&cst(int(2))));
        assert_eq!(gcd(&a, &b), x().sub(&y()));
        let f = x().sub(&y()).pow(2).mul(&x());
        let sq = squarefree_decomposition(&f);
        assert_eq!(sq, vec![(x(), 1), (x().sub(&y()), 2)]);
    }

    #[test]
    fn factorization() {
        let f = x().pow(2).sub(&y().pow(2));
        let (_, fs) = factor(&f);
        assert_eq!(fs.len(), 2);
        // x^4 + y^4 is irreducible over ℚ even though it splits mod every prime
        let g = p(&[((4, 0), 1), ((0, 4), 1)]);
        assert_eq!(factor(&g).1.len(), 1);
        let h = p(&[((2, 0), 1), ((3, 0), 1), ((0, 2), -1)]);
        assert_eq!(factor(&h).1, vec![(h.clone(), 1)]);
        let k = x().pow(2).mul(&y().pow(2)).scale(&int(-3));
        let (c, ks) = factor(&k);
        assert_eq!(c, int(-3));
        assert_eq!(ks, vec![(x(), 2), (y(), 2)]);
        // (x^2 + y^3 + 1)(x y - 2) with a shear needed
        let m = p(&[((2, 0), 1), ((0, 3), 1), ((0, 0), 1)]).mul(&p(&[((1, 1), 1), ((0, 0), -2)]));
        assert_eq!(factor(&m).1.len(), 2);
    }

    #[test]
    fn resultants_and_solving() {
        let a = x().pow(2).add(&y().pow(2)).sub(&cst(int(2)));
        let b = x().sub(&y());
        let r = resultant(&a, &b, 1);
        assert_eq!(r.monic(), UPoly::new(vec![int(-1), int(0), int(1)]));
        let s = solve(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(s.rational, vec![(int(-1), int(-1)), (int(1), int(1))]);
        let c = x().pow(2).add(&y().pow(2)).sub(&cst(int(1)));
        let d = x().sub(&cst(rat(1, 2)));
        let s = solve(&[c, d]).unwrap();
        assert!(s.rational.is_empty());
        assert_eq!(s.nonrational.len(), 1);
        // singular point of the cusp lies at the origin only
        let cusp = x().pow(3).sub(&y().pow(2));
        let s = solve(&[cusp.clone(), cusp.derivative(0), cusp.derivative(1)]).unwrap();
        assert_eq!(s.rational, vec![(int(0), int(0))]);
        assert!(solve(&[a.clone(), a.mul(&b)]).is_none());
    }

    #[test]
    fn number_field_gcd() {
        // x^2 + 1 = 0 and x y - 1 = 0 meet at (i, -i): nonrational
        let e = x().pow(2).add(&cst(int(1)));
        let f = x().mul(&y()).sub(&cst(int(1)));
        let s = solve(&[e.clone(), f]).unwrap();
        assert_eq!(s.nonrational.len(), 1);
        let g = y().pow(3).add(&cst(int(5)));
        assert!(solve(&[e, g, x().add(&y())]).unwrap().nonrational.is_empty());
    }
}
