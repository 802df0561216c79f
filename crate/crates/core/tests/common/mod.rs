#![allow(dead_code)]

use igusa::cli::expr::{parse_poly, parse_zeta};
use igusa::curveres::{Region, ResidueClass, XY};
use igusa::exactalg::scalar::int;
use igusa::resolution::{Component, ResolutionDatum, Stratum};
use igusa::{MultiPoly, ZetaRat};
use num_complex::Complex64;
use proptest::prelude::*;

/// A worked example: `f`, `g`, the region, the residue class of p used for
/// the symbolic counts, and the displayed formula.
pub struct Worked {
    pub name: &'static str,
    pub f: &'static str,
    pub g: &'static str,
    pub region: Region,
    pub class: Option<ResidueClass>,
    pub formula: &'static str,
}

fn c(residue: u64, modulus: u64) -> Option<ResidueClass> {
    Some(ResidueClass { residue, modulus })
}

pub fn worked() -> Vec<Worked> {
    vec![
        Worked { name: "case 1", f: "(x^2+y^2)^2", g: "x^4+y^4", region: Region::origin(), class: c(3, 4), formula: "1/q^2" },
        Worked { name: "case 2", f: "x^2+y^2", g: "x^4+y^4", region: Region::origin(), class: c(3, 4), formula: "(q^2-1)/(q^2*(q^(2-2*s)-1))" },
        Worked { name: "case 3", f: "x^4+y^4", g: "x^2+y^2", region: Region::origin(), class: c(3, 4), formula: "(q^2-1)/(q^2*(q^(2+2*s)-1))" },
        Worked {
            name: "case 4, p = 3 mod 4",
            f: "y^2+x^4",
            g: "x^2+y^4",
            region: Region::origin(),
            class: c(3, 4),
            formula: "(q-1)*(q^(4+2*s)+q^(4-2*s)+q^5-q^4+q^3-q^2-q-1)/(q^2*(q^(3+2*s)-1)*(q^(3-2*s)-1))",
        },
        Worked {
            name: "case 4, p = 1 mod 4",
            f: "y^2+x^4",
            g: "x^2+y^4",
            region: Region::origin(),
            class: c(1, 4),
            formula: "(q-1)*(q^(5+3*s)+q^(5-3*s)+(q^2-2*q-1)*(q^(4+2*s)+q^(4-2*s))+(-q^5+q^3+q^2-q-1)*(q^(1+s)+q^(1-s))\
                      +q^7-q^6+2*q^5-2*q^4+2*q^2+3*q-1)/(q^2*(q^(3+2*s)-1)*(q^(3-2*s)-1)*(q^(1+s)-1)*(q^(1-s)-1))",
        },
        Worked {
            name: "first critical example, f/g",
            f: "x^2-y^2",
            g: "x^2",
            region: Region::FullLattice,
            class: None,
            formula: "(q^(1+s)+q^2*(q-2)*q^(-s)+q^(2-2*s)-2*q+1)/((q+1)*(q^(1+s)-1)*(q^(1-2*s)-1))",
        },
        Worked { name: "first critical example, f/g - 1", f: "-y^2", g: "x^2", region: Region::FullLattice, class: None, formula: "(q-1)^2/((q^(1+2*s)-1)*(q^(1-2*s)-1))" },
        Worked {
            name: "second critical example, f/g",
            f: "x^2+x^3-y^2",
            g: "x^2",
            region: Region::origin(),
            class: None,
            formula: "(q^(1+s)+q^2*(q-2)*q^(-s)+q^(2-2*s)-2*q+1)/(q^2*(q+1)*(q^(1+s)-1)*(q^(1-2*s)-1))",
        },
        Worked {
            name: "second critical example, f/g - 1",
            f: "x^3-y^2",
            g: "x^2",
            region: Region::origin(),
            class: None,
            formula: "(q-1)*(-q^(4+2*s)+(q^2-q+1)*q^(4+s)+(-q^2+q-1)*q^(2-s)+q^4-q^3+q^2-q+1)/(q^2*(q^(5+2*s)-1)*(q^(1+s)-1)*(q^(1-2*s)-1))",
        },
    ]
}

impl Worked {
    pub fn formula(&self) -> ZetaRat {
        parse_zeta(self.formula).unwrap()
    }

    pub fn polys(&self) -> (MultiPoly, MultiPoly) {
        (parse_poly(self.f, &XY).unwrap(), parse_poly(self.g, &XY).unwrap())
    }
}

fn poly_in(var: &str, c: &[i64]) -> MultiPoly {
    let mut p = MultiPoly::zero(&[var]);
    for (i, k) in c.iter().enumerate() {
        p.add_term(vec![i as i32], int(*k));
    }
    p
}

fn qpoly(c: &[i64]) -> MultiPoly {
    poly_in("q", c)
}

fn lpoly(c: &[i64]) -> MultiPoly {
    poly_in("L", c)
}

fn stratum(ids: &[String], count: &[i64], euler: i64) -> Stratum {
    Stratum::new(ids.iter().map(|s| s.as_str())).with_count(qpoly(count)).with_class(lpoly(count)).with_euler(euler)
}

/// Surface data with up to three components, all strata filled.
pub fn arb_datum() -> impl Strategy<Value = ResolutionDatum> {
    prop::collection::vec((0u32..4, 0u32..4, 1u32..5), 1..=3).prop_flat_map(|comps| {
        let k = comps.len();
        let singles = prop::collection::vec((prop::collection::vec(-2i64..4, 2), -3i64..4), k);
        let pairs = prop::collection::vec((0i64..3, -1i64..3), k * (k - 1) / 2);
        let ambient = (prop::collection::vec(-2i64..4, 3), -3i64..4);
        (Just(comps), singles, pairs, ambient).prop_map(|(comps, singles, pairs, ambient)| {
            let ids: Vec<String> = (0..comps.len()).map(|i| format!("E{}", i + 1)).collect();
            let components = comps.iter().zip(&ids).map(|(&(nf, ng, v), id)| Component::new(id, nf, ng, v, true)).collect();
            let mut strata = vec![stratum(&[], &ambient.0, ambient.1)];
            for (id, (cnt, e)) in ids.iter().zip(&singles) {
                strata.push(stratum(std::slice::from_ref(id), cnt, *e));
            }
            let mut it = pairs.iter();
            for i in 0..ids.len() {
                for j in i + 1..ids.len() {
                    let (cnt, e) = it.next().unwrap();
                    strata.push(stratum(&[ids[i].clone(), ids[j].clone()], &[*cnt], *e));
                }
            }
            ResolutionDatum { n: 2, components, strata, adapted: true }
        })
    })
}

fn bump(s: &mut Stratum, dq: &[i64], de: i64) {
    let d = qpoly(dq);
    s.count = Some(s.count.take().unwrap().add(&d));
    s.groth_class = Some(s.groth_class.take().unwrap().add(&lpoly(dq)));
    s.euler = Some(s.euler.unwrap() + de);
}

/// Blow up one rational point of the stratum `which` (one or two
/// components). The new curve `X` has the usual data.
pub fn blow_up(d: &ResolutionDatum, which: usize) -> ResolutionDatum {
    let mut out = d.clone();
    let ids: Vec<String> = d.strata[which].ids.iter().cloned().collect();
    assert!(!ids.is_empty() && ids.len() <= 2);
    let comps: Vec<&Component> = ids.iter().map(|i| d.component(i).unwrap()).collect();
    let (nf, ng, v) = comps.iter().fold((0, 0, 0), |a, c| (a.0 + c.nf, a.1 + c.ng, a.2 + c.v));
    let v = if ids.len() == 1 { v + 1 } else { v };
    out.components.push(Component::new("X", nf, ng, v, true));
    bump(&mut out.strata[which], &[-1], -1);
    for id in &ids {
        out.strata.push(stratum(&[id.clone(), "X".into()], &[1], 1));
    }
    if ids.len() == 1 {
        out.strata.push(stratum(&["X".into()], &[0, 1], 1));
    } else {
        out.strata.push(stratum(&["X".into()], &[-1, 1], 0));
    }
    out
}

/// `(1/(p−1)) Σ_{u ∈ 𝔽_p^×} χ(u)^N` for the character of order `d` sending a
/// fixed generator to `e^{2πi/d}`, together with `χ(a0)^N`.
pub fn char_data(p: u64, d: u32, n_exp: i64, a0: u64) -> (Complex64, Complex64) {
    let g = (2..p).find(|&g| (1..p - 1).all(|k| pow_mod(g, k, p) != 1)).unwrap();
    let mut avg = Complex64::new(0.0, 0.0);
    let mut at = Complex64::new(0.0, 0.0);
    for j in 0..p - 1 {
        let u = pow_mod(g, j, p);
        let ang = std::f64::consts::TAU * (j as f64) * (n_exp as f64) / d as f64;
        let val = Complex64::new(ang.cos(), ang.sin());
        avg += val;
        if u == a0 % p {
            at = val;
        }
    }
    (avg / (p - 1) as f64, at)
}

fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    (0..e).fold(1, |acc, _| acc * b % m)
}

/// Truncated expansion in `t` of `∫_{a+p^eℤ_p} χ(ac z)^N |z|^{Ns+n−1} |dz|`
/// by summing over residue classes, shells `ord z ≤ depth`; `a = 2·p^k`
/// (`a = 0` for `None`) and χ as in `char_data`.
pub fn residue_sum(p: u64, a_ord: Option<u32>, e: u32, n_exp: i64, n: u32, d: u32, depth: u32) -> std::collections::BTreeMap<i64, Complex64> {
    let chi = |u: u64| char_data(p, d, n_exp, u).1;
    let pf = p as f64;
    let mut out = std::collections::BTreeMap::new();
    match a_ord {
        Some(k) if k < e => {
            // the p classes mod p^{e+1} inside 2p^k + p^e ℤ_p
            let pe = p.pow(e);
            for j in 0..p {
                let z = 2 * p.pow(k) + j * pe;
                let ac = (z / p.pow(k)) % p;
                let w = pf.powi(-(e as i32) - 1) * pf.powi(-((k * (n - 1)) as i32));
                *out.entry(n_exp * k as i64).or_insert(Complex64::new(0.0, 0.0)) += chi(ac) * w;
            }
        }
        _ => {
            for k in e..=depth {
                for u in 1..p {
                    let w = pf.powi(-(k as i32) - 1) * pf.powi(-((k * (n - 1)) as i32));
                    *out.entry(n_exp * k as i64).or_insert(Complex64::new(0.0, 0.0)) += chi(u) * w;
                }
            }
        }
    }
    out
}

/// Compares the closed form of the monomial integral with `residue_sum` to
/// depth 12.
pub fn lemma_agrees(p: u64, a_ord: Option<u32>, e: u32, n_exp: i64, n: u32, d: u32) -> Result<(), String> {
    use igusa::exactalg::scalar::{rat_to_f64, Rational};
    use igusa::exactalg::zetarat::Character;
    const DEPTH: u32 = 12;
    let r = igusa::zeta::monomial_integral(a_ord, e, n_exp, n, Character { order: d, conductor: 1 }).map_err(|x| x.to_string())?;
    let direct = residue_sum(p, a_ord, e, n_exp, n, d, DEPTH);
    let factor = if r.unit_root.is_some() { char_data(p, d, n_exp, 2).1 } else { Complex64::new(1.0, 0.0) };
    let span = n_exp.abs() * DEPTH as i64;
    let (lo, hi) = if n_exp >= 0 { (0, span) } else { (-span, 0) };
    let exact = match &r.value {
        None => Default::default(),
        Some(z) => {
            let pole = Rational::new((-(n as i64)).into(), n_exp.max(1).into());
            let (beta, alpha) = match n_exp.signum() {
                1 => (Some(pole), None),
                -1 => (None, Some(Rational::new((n as i64).into(), (-n_exp).into()))),
                _ => (None, None),
            };
            let in_ball = a_ord.is_none_or(|k| k >= e);
            let (beta, alpha) = if in_ball { (beta, alpha) } else { (None, None) };
            z.band_series(beta.as_ref(), alpha.as_ref(), lo, hi, &int(p as i64)).map_err(|x| x.to_string())?
        }
    };
    // N = 0 folds every shell onto t^0; the truncated tail is then p^{−13n}/(1−p^{−n})
    let tol = 1e-12 + if n_exp == 0 { 2.0 * (p as f64).powi(-13 * n as i32) } else { 0.0 };
    for k in lo..=hi {
        let ex = exact.get(&k).map(|c| Complex64::new(rat_to_f64(c), 0.0) * factor).unwrap_or_default();
        let di = direct.get(&k).cloned().unwrap_or_default();
        if (ex - di).norm() > tol {
            return Err(format!("p={} a_ord={:?} e={} N={} n={} d={} t^{}: closed form {} vs sum {}", p, a_ord, e, n_exp, n, d, k, ex, di));
        }
    }
    Ok(())
}
