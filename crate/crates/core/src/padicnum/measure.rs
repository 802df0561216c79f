//! Measures of the order strata `{ord f = a, ord g = b}` and the oracle for
//! the Laurent coefficients of the zeta function.

use super::engine::{choose_split, run, Accum, Action, Cell, Domain, Modulus, Rule, Tracked};
use crate::exactalg::scalar::Rational;
use crate::{Error, MultiPoly};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeMap;
use std::ops::RangeInclusive;

/// Known range of `(ord f, ord g)` on an undetermined box; `None` is an
/// open upper end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OrderBounds {
    pub a_lo: i64,
    pub a_hi: Option<i64>,
    pub b_lo: i64,
    pub b_hi: Option<i64>,
}

impl OrderBounds {
    /// Whether `ord f − ord g = k` is possible.
    pub fn allows(&self, k: i64) -> bool {
        let lo = self.a_lo - self.b_hi.unwrap_or(i64::MAX / 4);
        let hi = self.a_hi.map_or(i64::MAX / 4, |a| a - self.b_lo);
        lo <= k && k <= hi
    }
}

#[derive(Clone, Debug)]
pub struct MeasureTable {
    pub p: u64,
    pub ell: u32,
    pub n: usize,
    /// Residue classes mod p^ℓ on which `(ord f, ord g) = (a, b)`.
    pub counts: BTreeMap<(i64, i64), BigInt>,
    /// Residue classes mod p^ℓ with an undetermined order, by known range.
    pub undetermined: BTreeMap<OrderBounds, BigInt>,
    pub undetermined_mass: Rational,
    pub region: String,
    pub region_measure: Rational,
}

impl MeasureTable {
    /// `p^{−ℓn}`.
    pub fn class_measure(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(self.p).pow(self.ell * self.n as u32))
    }

    pub fn determined_mass(&self) -> Rational {
        let c: BigInt = self.counts.values().sum();
        Rational::from_integer(c) * self.class_measure()
    }
}

struct OrderRule<'a> {
    f: &'a Tracked,
    g: &'a Tracked,
    md: &'a Modulus,
    ell: u32,
    flat: bool,
}

enum Leaf {
    Det(i64, i64),
    Undet(OrderBounds),
}

impl Rule for OrderRule<'_> {
    type Out = Leaf;

    fn classify(&self, cell: &Cell) -> Action<Leaf> {
        if self.flat {
            if let Some(i) = (0..cell.d.len()).find(|&i| cell.d[i] < self.ell) {
                return Action::Split(i);
            }
        }
        let bg = self.g.bounds(&cell.c, &cell.d, self.md);
        let bf = self.f.bounds(&cell.c, &cell.d, self.md);
        match (bf.exact(self.md), bg.exact(self.md)) {
            (Some(a), Some(b)) => Action::Leaf(Leaf::Det(a, b)),
            (a, b) => {
                // When g is stuck at the depth cap, refining f still narrows k.
                let via_g = b.is_none().then(|| choose_split(cell, self.g.blocking_index(&bg), self.ell)).flatten();
                let via_f = || a.is_none().then(|| choose_split(cell, self.f.blocking_index(&bf), self.ell)).flatten();
                match via_g.or_else(via_f) {
                    Some(i) => Action::Split(i),
                    None => Action::Leaf(Leaf::Undet(OrderBounds { a_lo: bf.lower(), a_hi: a, b_lo: bg.lower(), b_hi: b })),
                }
            }
        }
    }
}

#[derive(Clone)]
struct OrderAcc {
    det: BTreeMap<(i64, i64), BigInt>,
    undet: BTreeMap<OrderBounds, BigInt>,
    p: u64,
    /// ℓn: a box of depth D holds p^{ℓn − D} classes mod p^ℓ.
    total: u32,
}

impl OrderAcc {
    fn classes(&self, cell: &Cell) -> BigInt {
        BigInt::from(self.p).pow(self.total - cell.depth())
    }
}

impl Accum for OrderAcc {
    type Out = Leaf;

    fn leaf(&mut self, cell: &Cell, out: Leaf) {
        let c = self.classes(cell);
        match out {
            Leaf::Det(a, b) => *self.det.entry((a, b)).or_default() += c,
            Leaf::Undet(ob) => *self.undet.entry(ob).or_default() += c,
        }
    }

    fn leftover(&mut self, _cell: &Cell) {}

    fn merge(&mut self, other: Self) {
        for (k, v) in other.det {
            *self.det.entry(k).or_default() += v;
        }
        for (k, v) in other.undet {
            *self.undet.entry(k).or_default() += v;
        }
    }
}

fn region_label(d: &Domain) -> String {
    match d {
        Domain::Lattice => "Zp^n".into(),
        Domain::Units => "(Zp^x)^n".into(),
        Domain::Polydisc { center, m } => {
            let c: Vec<String> = center.iter().map(crate::exactalg::scalar::fmt_rat).collect();
            format!("({}) + p^{} Zp^n", c.join(", "), m)
        }
    }
}

fn table(f: &MultiPoly, g: &MultiPoly, domain: &Domain, p: u64, ell: u32, budget: u64, flat: bool) -> Result<MeasureTable, Error> {
    if ell == 0 {
        return Err(Error::Invalid("ℓ must be at least 1".into()));
    }
    if p < 3 || !crate::exactalg::scalar::is_prime(p) {
        return Err(Error::BadPrime { p, reason: "p must be an odd prime".into() });
    }
    if g.is_zero() {
        return Err(Error::Invalid("g must be non-zero".into()));
    }
    let n = f.nvars();
    let md = Modulus::new(p);
    if ell >= md.k {
        return Err(Error::Invalid(format!("ℓ = {} exceeds the working precision {} for p = {}", ell, md.k - 1, p)));
    }
    if let Domain::Polydisc { m, .. } = domain {
        if *m > ell {
            return Err(Error::Invalid("polydisc radius finer than p^ℓ".into()));
        }
    }
    let tf = Tracked::new(f, &md)?;
    let tg = Tracked::new(&g.with_vars(&f.vars().iter().map(|s| s.as_str()).collect::<Vec<_>>()).ok_or_else(|| Error::Invalid("f and g use different variables".into()))?, &md)?;
    let rule = OrderRule { f: &tf, g: &tg, md: &md, ell, flat };
    let total = ell * n as u32;
    let cells = domain.cells(n, &md)?;
    let proto = OrderAcc { det: BTreeMap::new(), undet: BTreeMap::new(), p, total };
    let (acc, exhausted) = run(cells, &rule, budget, &md, proto);
    if exhausted {
        return Err(Error::BudgetExceeded { budget, partial: None });
    }
    let pl = BigInt::from(p).pow(total);
    let und: BigInt = acc.undet.values().sum();
    Ok(MeasureTable {
        p,
        ell,
        n,
        counts: acc.det,
        undetermined: acc.undet,
        undetermined_mass: Rational::new(und, pl),
        region: region_label(domain),
        region_measure: domain.measure(n, p),
    })
}

/// Order strata of `(f, g)` on the domain with boxes refined adaptively up
/// to depth ℓ in every coordinate. `budget` caps the number of boxes
/// examined.
pub fn order_measure_table(f: &MultiPoly, g: &MultiPoly, domain: &Domain, p: u64, ell: u32, budget: u64) -> Result<MeasureTable, Error> {
    table(f, g, domain, p, ell, budget, false)
}

/// Same table from the flat enumeration of all classes mod p^ℓ.
pub fn order_measure_table_flat(f: &MultiPoly, g: &MultiPoly, domain: &Domain, p: u64, ell: u32, budget: u64) -> Result<MeasureTable, Error> {
    table(f, g, domain, p, ell, budget, true)
}

/// Interval for `μ_k = vol{ord f − ord g = k}`: determined mass plus the
/// mass of undetermined classes whose order range allows `k`.
pub fn zeta_oracle_coeffs(t: &MeasureTable, ks: RangeInclusive<i64>) -> BTreeMap<i64, (Rational, Rational)> {
    let cm = t.class_measure();
    ks.map(|k| {
        let lo: BigInt = t.counts.iter().filter(|((a, b), _)| a - b == k).map(|(_, c)| c).sum();
        let extra: BigInt = t.undetermined.iter().filter(|(ob, _)| ob.allows(k)).map(|(_, c)| c).sum();
        let lo = Rational::from_integer(lo) * &cm;
        let hi = &lo + Rational::from_integer(extra) * &cm;
        (k, (lo, hi))
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::expr::parse_poly;
    use crate::exactalg::scalar::{int, rat};

    fn poly(s: &str, vars: &[&str]) -> MultiPoly {
        parse_poly(s, vars).unwrap()
    }

    #[test]
    fn sphere_counts() {
        let t = order_measure_table(&poly("x", &["x"]), &poly("1", &["x"]), &Domain::Lattice, 3, 3, 1000).unwrap();
        let c = |a: i64| t.counts.get(&(a, 0)).cloned().unwrap_or_default();
        assert_eq!((c(0), c(1), c(2)), (18.into(), 6.into(), 2.into()));
        assert_eq!(t.undetermined_mass, rat(1, 27));
        let z = zeta_oracle_coeffs(&t, 1..=1);
        assert_eq!(z[&1].0, rat(2, 9));
        assert!(z[&1].1 >= rat(2, 9));
    }

    #[test]
    fn adaptive_matches_flat() {
        let v = ["x", "y"];
        for (f, g) in [("x^2+y^2", "x^4+y^4"), ("x^2-y^2", "x^2"), ("y^2+x^4", "x^2+y^4")] {
            for dom in [Domain::Lattice, Domain::Polydisc { center: vec![int(0), int(0)], m: 1 }] {
                let a = order_measure_table(&poly(f, &v), &poly(g, &v), &dom, 3, 3, 1_000_000).unwrap();
                let b = order_measure_table_flat(&poly(f, &v), &poly(g, &v), &dom, 3, 3, 1_000_000).unwrap();
                assert_eq!(a.counts, b.counts, "{} {}", f, g);
                assert_eq!(a.undetermined_mass, b.undetermined_mass);
            }
        }
    }

    #[test]
    fn diagonal_when_equal() {
        let v = ["x", "y"];
        let t = order_measure_table(&poly("x^2-y", &v), &poly("x^2-y", &v), &Domain::Lattice, 5, 3, 100000).unwrap();
        assert!(t.counts.keys().all(|(a, b)| a == b));
        assert_eq!(t.determined_mass() + &t.undetermined_mass, int(1));
    }

    #[test]
    fn case_two_measure() {
        let v = ["x", "y"];
        let dom = Domain::Polydisc { center: vec![int(0), int(0)], m: 1 };
        let t = order_measure_table(&poly("x^2+y^2", &v), &poly("x^4+y^4", &v), &dom, 3, 4, 1_000_000).unwrap();
        let z = zeta_oracle_coeffs(&t, -2..=-2);
        let (lo, hi) = &z[&-2];
        assert!(lo <= &rat(8, 81) && &rat(8, 81) <= hi);
        assert_eq!(*lo, rat(8, 81));
    }

    #[test]
    fn budget_is_reported() {
        let v = ["x", "y"];
        let r = order_measure_table(&poly("x^2-y^2", &v), &poly("x^2", &v), &Domain::Lattice, 3, 6, 10);
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }
}
