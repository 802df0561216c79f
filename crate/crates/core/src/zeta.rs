//! Zeta-function formulas on resolution data: the monomial integral, Denef's
//! explicit formula, the motivic zeta function and the topological one.

use crate::exactalg::poly::Poly;
use crate::exactalg::scalar::{fmt_rat, int, val_rat, Rational};
use crate::exactalg::upoly::UPoly;
use crate::exactalg::zetarat::{Character, ZetaRat, QT};
use crate::resolution::{ResolutionDatum, Stratum};
use crate::{Error, MultiPoly};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseTag {
    ConvergentSeries,
    PointEvaluation,
    Zero,
}

/// Where the integral converges, as a condition on `Re s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HalfPlane {
    Everywhere,
    /// `Re s > bound`
    Above(Rational),
    /// `Re s < bound`
    Below(Rational),
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HalfPlane::Everywhere => write!(f, "all s"),
            HalfPlane::Above(b) => write!(f, "Re s > {}", fmt_rat(b)),
            HalfPlane::Below(b) => write!(f, "Re s < {}", fmt_rat(b)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MonomialIntegralResult {
    pub case_tag: CaseTag,
    pub value: Option<ZetaRat>,
    /// Symbolic factor `χ(ac a)^N` multiplying `value` when χ is nontrivial.
    pub unit_root: Option<String>,
    pub half_plane: HalfPlane,
}

/// Integral of `ω(z)^N |z|^{n−1} |dz|` over `a + p^e R`, where the center is
/// given by its order (`None` for `a = 0`). Orders must be nonnegative.
pub fn monomial_integral(a_ord: Option<u32>, e: u32, n_exp: i64, n: u32, chi: Character) -> Result<MonomialIntegralResult, Error> {
    assert!(n >= 1);
    let nn = n as i64;
    let half_plane = match n_exp.signum() {
        1 => HalfPlane::Above(Rational::new((-nn).into(), n_exp.into())),
        -1 => HalfPlane::Below(Rational::new(nn.into(), (-n_exp).into())),
        _ => HalfPlane::Everywhere,
    };
    let d = chi.order.max(1) as i64;
    let power_trivial = n_exp % d == 0;
    let zero = |hp: HalfPlane| MonomialIntegralResult { case_tag: CaseTag::Zero, value: None, unit_root: None, half_plane: hp };
    let in_ball = a_ord.is_none_or(|k| k >= e);
    if in_ball {
        if !power_trivial {
            return Ok(zero(half_plane));
        }
        // (1−q⁻¹) q^{−en} t^{eN} / (1 − q^{−n} t^N) = (q−1) q^{n−en−1} t^{(e−1)N} / (q^n t^{−N} − 1)
        let ei = e as i64;
        let num = ZetaRat::monomial(int(1), (nn - ei * nn - 1) as i32, ((ei - 1) * n_exp) as i32);
        let q_minus_1 = ZetaRat::q().sub(&ZetaRat::one());
        let value = num.mul(&q_minus_1).mul(&ZetaRat::inv_factor(nn, n_exp, 1));
        return Ok(MonomialIntegralResult { case_tag: CaseTag::ConvergentSeries, value: Some(value), unit_root: None, half_plane });
    }
    let k = a_ord.unwrap() as i64;
    // χ^N trivial on 1 + p^{e−k} R
    if !power_trivial {
        let depth = e as i64 - k;
        if depth < chi.conductor as i64 {
            return Err(Error::NeedsCharacterData(format!(
                "chi of order {} and conductor {} raised to {} on 1+p^{}R",
                chi.order, chi.conductor, n_exp, depth
            )));
        }
    }
    let unit_root = if chi.is_trivial() || power_trivial { None } else { Some(format!("chi(ac a)^{}", n_exp)) };
    let value = ZetaRat::monomial(int(1), (-(e as i64) - (nn - 1) * k) as i32, (n_exp * k) as i32);
    Ok(MonomialIntegralResult { case_tag: CaseTag::PointEvaluation, value: Some(value), unit_root, half_plane: HalfPlane::Everywhere })
}

/// Convenience form taking the center as a rational number and a prime.
pub fn monomial_integral_at(a: &Rational, p: u64, e: u32, n_exp: i64, n: u32, chi: Character) -> Result<MonomialIntegralResult, Error> {
    let ord = if a.is_zero() {
        None
    } else {
        let k = val_rat(a, p);
        if k < 0 {
            return Err(Error::Invalid(format!("{} is not a p-adic integer for p={}", fmt_rat(a), p)));
        }
        Some(k as u32)
    };
    monomial_integral(ord, e, n_exp, n, chi)
}

fn ids_label(s: &Stratum) -> String {
    format!("{{{}}}", s.ids.iter().cloned().collect::<Vec<_>>().join(","))
}

fn q_poly(c: &MultiPoly, what: &str) -> Result<Poly<Rational>, Error> {
    c.with_vars(&QT)
        .filter(|p| p.min_exp(1) == 0 && p.max_exp(1) == 0)
        .ok_or_else(|| Error::Invalid(format!("{} must be a polynomial in q", what)))
}

/// Denef's explicit formula
/// `Z = q^{−n} Σ_I c_I ∏_{i∈I} (q−1)/(q^{v_i+N_i s} − 1)`.
pub fn denef_zeta(d: &ResolutionDatum) -> Result<ZetaRat, Error> {
    let q_minus_1 = ZetaRat::q().sub(&ZetaRat::one());
    let mut total = ZetaRat::zero();
    for s in &d.strata {
        let c = s.count.as_ref().ok_or_else(|| Error::MissingCounts(ids_label(s)))?;
        if c.is_zero() {
            continue;
        }
        let mut term = ZetaRat::from_poly(q_poly(c, "stratum count")?);
        for id in &s.ids {
            let comp = d.component(id).ok_or_else(|| Error::Invalid(format!("unknown component {}", id)))?;
            term = term.mul(&q_minus_1).mul(&ZetaRat::inv_factor(comp.v as i64, comp.n(), 1));
        }
        total = total.add(&term);
    }
    Ok(total.mul(&ZetaRat::monomial(int(1), -(d.n as i32), 0)))
}

/// A rational function in `(𝕃, T)` over the factors `𝕃^v − T^N`. The
/// numerator may carry further opaque symbols after `L` and `T`.
#[derive(Clone, Debug)]
pub struct MotivicRat {
    pub num: MultiPoly,
    pub den: BTreeMap<(i64, i64), u32>,
}

fn lt_factor(vars: &[String], v: i64, n: i64) -> MultiPoly {
    let mut e1 = vec![0; vars.len()];
    e1[0] = v as i32;
    let mut e2 = vec![0; vars.len()];
    e2[1] = n as i32;
    Poly::from_terms(vars.to_vec(), [(e1, int(1)), (e2, int(-1))])
}

fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out = a.to_vec();
    for v in b {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out
}

fn recast(p: &MultiPoly, vars: &[String]) -> MultiPoly {
    let refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    p.with_vars(&refs).expect("variable superset")
}

impl MotivicRat {
    pub fn zero() -> Self {
        MotivicRat { num: Poly::zero(&["L", "T"]), den: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn over(&self, den: &BTreeMap<(i64, i64), u32>, vars: &[String]) -> MultiPoly {
        let mut num = recast(&self.num, vars);
        for (&(v, n), &m) in den {
            let have = self.den.get(&(v, n)).copied().unwrap_or(0);
            if m > have {
                num = num.mul(&lt_factor(vars, v, n).pow(m - have));
            }
        }
        num
    }

    pub fn add(&self, o: &Self) -> Self {
        let vars = union_vars(self.num.vars(), o.num.vars());
        let mut den = self.den.clone();
        for (&k, &m) in &o.den {
            let e = den.entry(k).or_insert(0);
            *e = (*e).max(m);
        }
        let num = self.over(&den, &vars).add(&o.over(&den, &vars));
        MotivicRat { num, den }.normalized()
    }

    /// Cancel denominator factors that divide the numerator.
    pub fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let vars = self.num.vars().to_vec();
        for (&(v, n), m) in self.den.iter_mut() {
            let f = lt_factor(&vars, v, n);
            while *m > 0 {
                match self.num.div_exact(&f) {
                    Some(q) => {
                        self.num = q;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, m| *m > 0);
        self
    }

    /// Equality by cross-multiplication.
    pub fn equals(&self, o: &Self) -> bool {
        let vars = union_vars(self.num.vars(), o.num.vars());
        let mut den = self.den.clone();
        for (&k, &m) in &o.den {
            let e = den.entry(k).or_insert(0);
            *e = (*e).max(m);
        }
        self.over(&den, &vars) == o.over(&den, &vars)
    }

    fn den_string(&self, latex: bool) -> Vec<String> {
        self.den
            .iter()
            .map(|(&(v, n), &m)| {
                let lv = match (v, latex) {
                    (1, true) => "\\mathbb{L}".to_string(),
                    (1, false) => "L".to_string(),
                    (_, true) => format!("\\mathbb{{L}}^{{{}}}", v),
                    _ => format!("L^{}", v),
                };
                let tn = match (n, latex) {
                    (1, _) => "T".to_string(),
                    (_, true) => format!("T^{{{}}}", n),
                    (_, false) if n < 0 => format!("T^({})", n),
                    _ => format!("T^{}", n),
                };
                let f = format!("({} - {})", lv, tn);
                match (m, latex) {
                    (1, _) => f,
                    (_, true) => format!("{}^{{{}}}", f, m),
                    _ => format!("{}^{}", f, m),
                }
            })
            .collect()
    }

    pub fn render_plain(&self) -> String {
        let num = self.num.to_string();
        if self.den.is_empty() {
            return num;
        }
        format!("({})/({})", num, self.den_string(false).join("*"))
    }

    pub fn render_latex(&self) -> String {
        let num = self
            .num
            .render_with(
                |c| {
                    let s = fmt_rat(c);
                    (c.is_one() || (-c).is_one(), if c.is_integer() { s } else { format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()) })
                },
                " ",
                |e| format!("^{{{}}}", e),
            )
            .replace('L', "\\mathbb{L}");
        if self.den.is_empty() {
            return num;
        }
        format!("\\frac{{{}}}{{{}}}", num, self.den_string(true).join(" "))
    }
}

impl fmt::Display for MotivicRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_plain())
    }
}

/// `Σ_I [E_I°] ∏_{i∈I} (𝕃−1) T^{N_i} / (𝕃^{v_i} − T^{N_i})`.
pub fn motivic_zeta(d: &ResolutionDatum) -> Result<MotivicRat, Error> {
    let mut total = MotivicRat::zero();
    for s in &d.strata {
        let class = s.groth_class.as_ref().ok_or_else(|| Error::MissingClasses(ids_label(s)))?;
        if class.is_zero() {
            continue;
        }
        let mut vars: Vec<String> = vec!["L".into(), "T".into()];
        vars = union_vars(&vars, class.vars());
        let mut num = recast(class, &vars);
        let mut den = BTreeMap::new();
        for id in &s.ids {
            let comp = d.component(id).ok_or_else(|| Error::Invalid(format!("unknown component {}", id)))?;
            let mut l1 = Poly::zero_owned(vars.clone());
            let mut e = vec![0; vars.len()];
            e[0] = 1;
            l1.add_term(e, int(1));
            l1.add_term(vec![0; vars.len()], int(-1));
            let mut te = vec![0; vars.len()];
            te[1] = comp.n() as i32;
            num = num.mul(&l1).mul(&Poly::from_terms(vars.clone(), [(te, int(1))]));
            *den.entry((comp.v as i64, comp.n())).or_insert(0) += 1;
        }
        total = total.add(&MotivicRat { num, den });
    }
    Ok(total)
}

/// Substitute `𝕃 ↦ q`, `T ↦ t`. `𝕃^v − T^N = t^N (q^v t^{−N} − 1)`.
pub fn motivic_specialize(m: &MotivicRat) -> Result<ZetaRat, Error> {
    let num = m.num.with_vars(&["L", "T"]).ok_or_else(|| {
        Error::NonPolynomialClass(format!("classes involve symbols other than L: {}", m.num))
    })?;
    let num = Poly::from_terms(QT.iter().map(|s| s.to_string()).collect(), num.terms().map(|(e, c)| (e.clone(), c.clone())));
    let mut z = ZetaRat::from_poly(num);
    for (&(v, n), &mult) in &m.den {
        z = z
            .mul(&ZetaRat::inv_factor(v, n, mult))
            .mul(&ZetaRat::monomial(int(1), 0, -(n as i32) * mult as i32));
    }
    Ok(z)
}

/// Specialize after replacing each opaque symbol by its point count, a
/// polynomial in `q`.
pub fn motivic_specialize_with(m: &MotivicRat, counts: &BTreeMap<String, MultiPoly>) -> Result<ZetaRat, Error> {
    let lt = ["L", "T"];
    let images = m
        .num
        .vars()
        .iter()
        .map(|v| match v.as_str() {
            "L" | "T" => Ok(Poly::var(&lt, v)),
            s => counts
                .get(s)
                .filter(|c| c.vars().len() == 1)
                .and_then(|c| Poly::from_terms(vec!["L".to_string()], c.terms().map(|(e, k)| (e.clone(), k.clone()))).with_vars(&lt))
                .ok_or_else(|| Error::NonPolynomialClass(format!("no point count for {}", s))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let num = m.num.compose(&images).ok_or_else(|| Error::NonPolynomialClass(format!("{}", m.num)))?;
    motivic_specialize(&MotivicRat { num, den: m.den.clone() })
}

/// Rational function of `s`: `num(s) / ∏ (v + N s)^m` with `gcd(v, N) = 1`.
#[derive(Clone, Debug)]
pub struct TopZetaRat {
    pub num: UPoly<Rational>,
    pub den: BTreeMap<(i64, i64), u32>,
}

fn linear(v: i64, n: i64) -> UPoly<Rational> {
    UPoly::new(vec![int(v), int(n)])
}

impl TopZetaRat {
    pub fn zero() -> Self {
        TopZetaRat { num: UPoly::zero(), den: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        TopZetaRat { num: UPoly::constant(c), den: BTreeMap::new() }
    }

    /// `1 / (v + N s)`; the gcd and any constant factor go to the numerator.
    pub fn inv_linear(v: i64, n: i64) -> Self {
        assert!(v != 0 || n != 0);
        if n == 0 {
            return Self::constant(Rational::new(1.into(), v.into()));
        }
        let g = v.gcd(&n);
        let (v, n) = (v / g, n / g);
        let mut den = BTreeMap::new();
        den.insert((v, n), 1);
        TopZetaRat { num: UPoly::constant(Rational::new(1.into(), g.into())), den }
    }

    fn over(&self, den: &BTreeMap<(i64, i64), u32>) -> UPoly<Rational> {
        let mut num = self.num.clone();
        for (&(v, n), &m) in den {
            let have = self.den.get(&(v, n)).copied().unwrap_or(0);
            if m > have {
                num = num.mul(&linear(v, n).pow(m - have));
            }
        }
        num
    }

    fn lcm_den(&self, o: &Self) -> BTreeMap<(i64, i64), u32> {
        let mut den = self.den.clone();
        for (&k, &m) in &o.den {
            let e = den.entry(k).or_insert(0);
            *e = (*e).max(m);
        }
        den
    }

    pub fn add(&self, o: &Self) -> Self {
        let den = self.lcm_den(o);
        TopZetaRat { num: self.over(&den).add(&o.over(&den)), den }.normalized()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut den = self.den.clone();
        for (&k, &m) in &o.den {
            *den.entry(k).or_insert(0) += m;
        }
        TopZetaRat { num: self.num.mul(&o.num), den }.normalized()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TopZetaRat { num: self.num.scale(c), den: self.den.clone() }.normalized()
    }

    pub fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        for (&(v, n), m) in self.den.iter_mut() {
            while *m > 0 {
                match self.num.div_exact(&linear(v, n)) {
                    Some(q) => {
                        self.num = q;
                        *m -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, m| *m > 0);
        self
    }

    pub fn equals(&self, o: &Self) -> bool {
        let den = self.lcm_den(o);
        self.over(&den) == o.over(&den)
    }

    pub fn evaluate(&self, s: &Rational) -> Result<Rational, Error> {
        let mut d = Rational::one();
        for (&(v, n), &m) in &self.den {
            let x = int(v) + int(n) * s;
            if x.is_zero() {
                return Err(Error::PoleHit(format!("{} + {}s at s = {}", v, n, fmt_rat(s))));
            }
            for _ in 0..m {
                d *= &x;
            }
        }
        Ok(self.num.eval(s) / d)
    }

    /// Poles `s = −v/N` with their orders.
    pub fn poles(&self) -> Vec<(Rational, u32)> {
        let mut out: Vec<_> = self.den.iter().map(|(&(v, n), &m)| (Rational::new((-v).into(), n.into()), m)).collect();
        out.sort();
        out
    }

    fn num_string(&self, latex: bool) -> String {
        let p = Poly::from_terms(
            vec!["s".to_string()],
            self.num.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (vec![i as i32], c.clone())),
        );
        if latex {
            p.render_with(
                |c| {
                    let s = fmt_rat(c);
                    (c.is_one() || (-c).is_one(), if c.is_integer() { s } else { format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom()) })
                },
                " ",
                |e| format!("^{{{}}}", e),
            )
        } else {
            p.to_string()
        }
    }

    fn den_string(&self, latex: bool) -> Vec<String> {
        self.den
            .iter()
            .map(|(&(v, n), &m)| {
                let lin = match n {
                    1 => format!("{} + s", v),
                    -1 => format!("{} - s", v),
                    _ if n < 0 => format!("{} - {}{}s", v, -n, if latex { "" } else { "*" }),
                    _ => format!("{} + {}{}s", v, n, if latex { "" } else { "*" }),
                };
                match (m, latex) {
                    (1, _) => format!("({})", lin),
                    (_, true) => format!("({})^{{{}}}", lin, m),
                    _ => format!("({})^{}", lin, m),
                }
            })
            .collect()
    }

    pub fn render_plain(&self) -> String {
        let num = self.num_string(false);
        if self.den.is_empty() {
            return num;
        }
        format!("({})/({})", num, self.den_string(false).join("*"))
    }

    pub fn render_latex(&self) -> String {
        let num = self.num_string(true);
        if self.den.is_empty() {
            return num;
        }
        format!("\\frac{{{}}}{{{}}}", num, self.den_string(true).join(" "))
    }
}

impl fmt::Display for TopZetaRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_plain())
    }
}

/// `Σ_I χ(E_I°) ∏_{i∈I} 1/(v_i + N_i s)`.
pub fn topological_zeta(d: &ResolutionDatum) -> Result<TopZetaRat, Error> {
    let mut total = TopZetaRat::zero();
    for s in &d.strata {
        let e = s.euler.ok_or_else(|| Error::MissingEuler(ids_label(s)))?;
        if e == 0 {
            continue;
        }
        let mut term = TopZetaRat::constant(int(e));
        for id in &s.ids {
            let comp = d.component(id).ok_or_else(|| Error::Invalid(format!("unknown component {}", id)))?;
            term = term.mul(&TopZetaRat::inv_linear(comp.v as i64, comp.n()));
        }
        total = total.add(&term);
    }
    Ok(total)
}

/// Largest pole order of a zeta value (0 when there are no poles).
pub fn max_pole_order(z: &ZetaRat) -> u32 {
    z.poles(None).iter().map(|p| p.order).max().unwrap_or(0)
}
