//! Numerical data of a resolved pair: stratum counts over 𝔽_p, Euler
//! characteristics, Grothendieck classes and K-point flags.

use super::{BlowupTree, Fresh, PlaneCurvePair, Point, Region};
use crate::exactalg::bivariate::{self, interpolate, restrict};
use crate::exactalg::poly::Poly;
use crate::exactalg::scalar::{fmt_rat, int, is_prime, rat_mod, Rational};
use crate::exactalg::upoly::UPoly;
use crate::resolution::{Component, ResolutionDatum, Stratum};
use crate::{Error, MultiPoly};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Primes `p ≡ residue (mod modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueClass {
    pub residue: u64,
    pub modulus: u64,
}

impl ResidueClass {
    pub fn contains(&self, p: u64) -> bool {
        p % self.modulus == self.residue % self.modulus
    }
}

#[derive(Clone, Debug)]
pub struct Extraction {
    pub datum: ResolutionDatum,
    /// Opaque class symbols `[Spec ℚ[t]/φ]` with their minimal polynomial and
    /// point count over 𝔽_q.
    pub symbols: BTreeMap<String, (UPoly<Rational>, MultiPoly)>,
    pub notes: Vec<String>,
    /// Primes used for the counts.
    pub primes: Vec<u64>,
}

impl Extraction {
    pub fn symbol_counts(&self) -> BTreeMap<String, MultiPoly> {
        self.symbols.iter().map(|(k, (_, c))| (k.clone(), c.clone())).collect()
    }
}

type Key = BTreeSet<usize>;

fn bad(p: u64, reason: impl Into<String>) -> Error {
    Error::BadPrime { p, reason: reason.into() }
}

fn red(c: &Rational, p: u64) -> Result<u64, Error> {
    rat_mod(c, p as u128).map(|v| v as u64).ok_or_else(|| bad(p, format!("{} is not p-integral", fmt_rat(c))))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// A polynomial in `(x, y)` reduced mod p.
#[derive(Clone, Debug)]
struct ModPoly {
    p: u64,
    terms: Vec<(u64, u64, u64)>,
}

impl ModPoly {
    fn new(h: &MultiPoly, p: u64) -> Result<Self, Error> {
        let mut terms = Vec::new();
        for (e, c) in h.terms() {
            let r = red(c, p)?;
            if r != 0 {
                terms.push((e[0] as u64, e[1] as u64, r));
            }
        }
        Ok(ModPoly { p, terms })
    }

    fn eval(&self, x: u64, y: u64) -> u64 {
        let p = self.p;
        self.terms.iter().fold(0, |acc, &(a, b, c)| (acc + c * pow_mod(x, a, p) % p * pow_mod(y, b, p)) % p)
    }
}

/// Dense univariate polynomial over 𝔽_p, low degree first.
fn fp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_from(u: &UPoly<Rational>, p: u64) -> Result<Vec<u64>, Error> {
    Ok(fp_trim(u.coeffs().iter().map(|c| red(c, p)).collect::<Result<_, _>>()?))
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = pow_mod(b[db], p - 2, p);
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let c = r[k] * inv % p;
        for i in 0..=db {
            let j = k - db + i;
            r[j] = (r[j] + p - c * b[i] % p) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_gcd_deg(a: &[u64], b: &[u64], p: u64) -> i64 {
    let (mut a, mut b) = (fp_trim(a.to_vec()), fp_trim(b.to_vec()));
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a.len() as i64 - 1
}

fn fp_derivative(a: &[u64], p: u64) -> Vec<u64> {
    fp_trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

fn fp_roots(a: &[u64], p: u64) -> usize {
    (0..p).filter(|&t| a.iter().rev().fold(0, |acc, &c| (acc * t + c) % p) == 0).count()
}

fn rat_root(phi: &UPoly<Rational>) -> Rational {
    -phi.coeff(0) / phi.coeff(1)
}

fn same_mod(a: &Point, b: &Point, p: u64) -> Result<bool, Error> {
    Ok(red(&a.0, p)? == red(&b.0, p)? && red(&a.1, p)? == red(&b.1, p)?)
}

fn region_center(tree: &BlowupTree) -> Option<&Point> {
    match &tree.pair.region {
        Region::Polydisc { center, .. } => Some(center),
        Region::FullLattice => None,
    }
}

/// Heuristic good-reduction guard; see the module docs for what it covers.
pub fn check_prime(tree: &BlowupTree, p: u64) -> Result<(), Error> {
    if p < 3 || !is_prime(p) {
        return Err(bad(p, "p must be an odd prime"));
    }
    if red(&tree.c_f, p)? == 0 || red(&tree.c_g, p)? == 0 {
        return Err(bad(p, "p divides a leading coefficient"));
    }
    if let Some(c) = region_center(tree) {
        red(&c.0, p)?;
        red(&c.1, p)?;
    }
    for n in &tree.nodes {
        for v in &n.visible {
            let m = ModPoly::new(&v.h, p)?;
            if m.terms.is_empty() {
                return Err(bad(p, format!("a local equation on chart {} vanishes mod p", n.id)));
            }
        }
        for (i, a) in n.blown.iter().enumerate() {
            for b in &n.blown[i + 1..] {
                if same_mod(a, b, p)? {
                    return Err(bad(p, format!("centers {:?} and {:?} collide mod p", a, b)));
                }
            }
            for v in &n.visible {
                let val = v.h.eval(&[a.0.clone(), a.1.clone()]);
                if !val.is_zero() && red(&val, p)? == 0 {
                    return Err(bad(p, format!("a component not through a center meets it mod p on chart {}", n.id)));
                }
            }
        }
        let local_point = match n.fresh {
            Fresh::Plane => region_center(tree).cloned(),
            Fresh::Origin => Some((int(0), int(0))),
            Fresh::Line => None,
        };
        if let Some(pt) = local_point {
            for v in &n.visible {
                let val = v.h.eval(&[pt.0.clone(), pt.1.clone()]);
                if !val.is_zero() && red(&val, p)? == 0 {
                    return Err(bad(p, format!("a component not through {:?} meets it mod p", pt)));
                }
                if val.is_zero() {
                    let gx = v.h.derivative(0).eval(&[pt.0.clone(), pt.1.clone()]);
                    let gy = v.h.derivative(1).eval(&[pt.0.clone(), pt.1.clone()]);
                    if !(gx.is_zero() && gy.is_zero()) && red(&gx, p)? == 0 && red(&gy, p)? == 0 {
                        return Err(bad(p, "a smooth component becomes singular mod p"));
                    }
                }
            }
        }
        if n.fresh == Fresh::Line {
            let e = n.exceptional.unwrap();
            let rs: Vec<UPoly<Rational>> = n
                .visible
                .iter()
                .filter(|v| v.comp != e)
                .map(|v| restrict(&v.h, 1, &Rational::zero()))
                .filter(|r| !r.is_zero())
                .collect();
            for (i, r) in rs.iter().enumerate() {
                let rp = fp_from(r, p)?;
                if rp.len() as i64 - 1 != r.deg() {
                    return Err(bad(p, format!("degree drop on the exceptional line of chart {}", n.id)));
                }
                if fp_gcd_deg(&rp, &fp_derivative(&rp, p), p) != r.gcd(&r.derivative()).deg() {
                    return Err(bad(p, format!("roots collide mod p on chart {}", n.id)));
                }
                for s in &rs[i + 1..] {
                    if fp_gcd_deg(&rp, &fp_from(s, p)?, p) != r.gcd(s).deg() {
                        return Err(bad(p, format!("intersection points collide mod p on chart {}", n.id)));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Counts of owned 𝔽_p-points over the reduction of the region, by the set
/// of components through them, plus the components with a certified
/// ℚ_p-point (and those whose only points failed the simple Hensel test).
struct PrimeData {
    counts: BTreeMap<Key, u64>,
    certified: BTreeSet<usize>,
    uncertain: BTreeMap<usize, Vec<(usize, u64, u64)>>,
}

pub(super) fn node_over_region(tree: &BlowupTree, node: usize, p: u64) -> Result<bool, Error> {
    match (region_center(tree), &tree.nodes[node].root_point) {
        (Some(c), Some(rp)) => same_mod(c, rp, p),
        (None, Some(rp)) => Ok(red(&rp.0, p).is_ok() && red(&rp.1, p).is_ok()),
        _ => Ok(true),
    }
}

fn prime_data(tree: &BlowupTree, p: u64) -> Result<PrimeData, Error> {
    check_prime(tree, p)?;
    let mut counts: BTreeMap<Key, u64> = BTreeMap::new();
    let mut certified = BTreeSet::new();
    let mut uncertain: BTreeMap<usize, Vec<(usize, u64, u64)>> = BTreeMap::new();
    for (ni, n) in tree.nodes.iter().enumerate() {
        if !node_over_region(tree, ni, p)? {
            continue;
        }
        let mods: Vec<ModPoly> = n.visible.iter().map(|v| ModPoly::new(&v.h, p)).collect::<Result<_, _>>()?;
        let dx: Vec<ModPoly> = n.visible.iter().map(|v| ModPoly::new(&v.h.derivative(0), p)).collect::<Result<_, _>>()?;
        let dy: Vec<ModPoly> = n.visible.iter().map(|v| ModPoly::new(&v.h.derivative(1), p)).collect::<Result<_, _>>()?;
        let blown: Vec<(u64, u64)> = n.blown.iter().map(|b| Ok((red(&b.0, p)?, red(&b.1, p)?))).collect::<Result<_, Error>>()?;
        let points: Vec<(u64, u64)> = match n.fresh {
            Fresh::Plane => match region_center(tree) {
                Some(c) => vec![(red(&c.0, p)?, red(&c.1, p)?)],
                None => (0..p).flat_map(|x| (0..p).map(move |y| (x, y))).collect(),
            },
            Fresh::Line => (0..p).map(|t| (0, t)).collect(),
            Fresh::Origin => vec![(0, 0)],
        };
        for (x, y) in points {
            if blown.contains(&(x, y)) {
                continue;
            }
            let mut key = Key::new();
            for (i, m) in mods.iter().enumerate() {
                if m.eval(x, y) == 0 {
                    let c = n.visible[i].comp;
                    key.insert(c);
                    if !tree.registry[c].exceptional {
                        if dx[i].eval(x, y) != 0 || dy[i].eval(x, y) != 0 {
                            certified.insert(c);
                        } else {
                            uncertain.entry(c).or_default().push((ni, x, y));
                        }
                    }
                }
            }
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    Ok(PrimeData { counts, certified, uncertain })
}

/// Search lifts of a mod-p zero of `h` for a Hensel certificate
/// `v(h(a)) > 2 min(v(∂h(a)))`. `Ok(false)` when every lift dies.
fn hensel_lift(h: &MultiPoly, start: (u64, u64), p: u64, max_depth: u32) -> Result<bool, Error> {
    use crate::exactalg::scalar::val_rat;
    let hx = h.derivative(0);
    let hy = h.derivative(1);
    let mut level: Vec<(Rational, Rational)> = vec![(int(start.0 as i64), int(start.1 as i64))];
    let mut pk = Rational::from_integer(p.into());
    for depth in 1..=max_depth {
        let mut next = Vec::new();
        for (a, b) in &level {
            let pt = [a.clone(), b.clone()];
            let v = h.eval(&pt);
            let vh = if v.is_zero() { i64::MAX } else { val_rat(&v, p) };
            if vh < depth as i64 {
                continue;
            }
            let gx = hx.eval(&pt);
            let gy = hy.eval(&pt);
            let vg = [gx, gy].iter().filter(|g| !g.is_zero()).map(|g| val_rat(g, p)).min();
            if let Some(vg) = vg {
                if vh > 2 * vg {
                    return Ok(true);
                }
            }
            if depth == max_depth {
                next.push((a.clone(), b.clone()));
                continue;
            }
            for i in 0..p {
                for j in 0..p {
                    next.push((a + &pk * int(i as i64), b + &pk * int(j as i64)));
                }
            }
            if next.len() > 200_000 {
                return Err(Error::Undecided("Hensel search budget exhausted".into()));
            }
        }
        if next.is_empty() {
            return Ok(false);
        }
        level = next;
        pk *= Rational::from_integer(p.into());
    }
    Err(Error::Undecided(format!("no Hensel certificate within depth {}", max_depth)))
}

fn kpoints_from(tree: &BlowupTree, data: &PrimeData, comp: usize, p: u64) -> Result<bool, Error> {
    if tree.registry[comp].exceptional {
        return Ok(true);
    }
    if data.certified.contains(&comp) {
        return Ok(true);
    }
    if let Some(pts) = data.uncertain.get(&comp) {
        for &(ni, x, y) in pts {
            let h = tree.nodes[ni].visible_of(comp).unwrap();
            if hensel_lift(h, (x, y), p, 6)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Whether component `comp` of the tree has ℚ_p-points over the region.
pub fn component_has_kpoints(tree: &BlowupTree, comp: usize, p: u64) -> Result<bool, Error> {
    let data = prime_data(tree, p)?;
    kpoints_from(tree, &data, comp, p)
}

/// Whether `h = 0` has smooth ℚ_p-points in `center + pℤ_p²` other than
/// `center` itself, decided through a resolution of `h` at the center.
pub fn curve_has_kpoints_near(h: &MultiPoly, center: &Point, p: u64) -> Result<bool, Error> {
    let pair = PlaneCurvePair::new(h.clone(), Poly::constant(&super::XY, Rational::one()), Region::Polydisc { center: center.clone(), m: 1 })?;
    let tree = super::resolve_embedded(&pair)?;
    let data = prime_data(&tree, p)?;
    for c in 0..tree.registry.len() {
        if !tree.registry[c].exceptional && kpoints_from(&tree, &data, c, p)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Geometric intersection data on exceptional curves (independent of p).
#[derive(Default)]
struct Geometry {
    /// stratum → (rational points, non-rational point schemes)
    points: BTreeMap<Key, (usize, Vec<UPoly<Rational>>)>,
}

fn geometry(tree: &BlowupTree) -> Geometry {
    let mut g = Geometry::default();
    for n in &tree.nodes {
        match n.fresh {
            Fresh::Line => {
                let e = n.exceptional.unwrap();
                let blown: Vec<Rational> = n.blown.iter().map(|b| b.1.clone()).collect();
                for v in n.visible.iter().filter(|v| v.comp != e) {
                    let r = restrict(&v.h, 1, &Rational::zero());
                    if r.deg() <= 0 {
                        continue;
                    }
                    let key: Key = [e, v.comp].into_iter().collect();
                    for (phi, _) in r.factor() {
                        if phi.deg() == 1 {
                            if !blown.contains(&rat_root(&phi)) {
                                g.points.entry(key.clone()).or_default().0 += 1;
                            }
                        } else {
                            g.points.entry(key.clone()).or_default().1.push(phi);
                        }
                    }
                }
            }
            Fresh::Origin => {
                let o = (int(0), int(0));
                if n.blown.contains(&o) {
                    continue;
                }
                let key: Key = n.visible.iter().filter(|v| v.h.constant_term().is_zero()).map(|v| v.comp).collect();
                if key.len() >= 2 {
                    g.points.entry(key).or_default().0 += 1;
                }
            }
            Fresh::Plane => {}
        }
    }
    g
}

/// Euler characteristic and class of each stratum supported on the
/// exceptional locus; `None` for strata that need the affine curves.
struct StratumGeo {
    euler: Option<i64>,
    class: Option<MultiPoly>,
}

fn class_poly(constant: i64, l: i64, symbols: &[(String, i64)]) -> MultiPoly {
    let mut vars = vec!["L".to_string()];
    vars.extend(symbols.iter().map(|(s, _)| s.clone()));
    let refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let mut p = Poly::zero(&refs);
    let mut e = vec![0; vars.len()];
    p.add_term(e.clone(), int(constant));
    e[0] = 1;
    p.add_term(e, int(l));
    for (k, (_, c)) in symbols.iter().enumerate() {
        let mut e = vec![0; vars.len()];
        e[k + 1] = 1;
        p.add_term(e, int(*c));
    }
    p
}

fn ids_of(tree: &BlowupTree, key: &Key) -> Vec<String> {
    key.iter().map(|&c| tree.registry[c].id.clone()).collect()
}

struct Skeleton {
    keys: BTreeSet<Key>,
    geo: BTreeMap<Key, StratumGeo>,
    symbols: BTreeMap<String, UPoly<Rational>>,
    components: Vec<usize>,
}

fn skeleton(tree: &BlowupTree) -> Skeleton {
    let g = geometry(tree);
    let mut symbols = BTreeMap::new();
    let mut geo: BTreeMap<Key, StratumGeo> = BTreeMap::new();
    let polydisc = region_center(tree).is_some();
    let exc: Vec<usize> = tree.exceptional_ids();
    let mut lost: BTreeMap<usize, (i64, i64, Vec<(String, i64)>)> = BTreeMap::new();
    for (key, (nrat, irr)) in &g.points {
        let mut syms = Vec::new();
        let mut geometric = *nrat as i64;
        for phi in irr {
            let name = format!("P{}", symbols.len() + 1);
            symbols.insert(name.clone(), phi.clone());
            syms.push((name, 1));
            geometric += phi.deg();
        }
        for &c in key {
            if tree.registry[c].exceptional {
                let l = lost.entry(c).or_insert((0, 0, Vec::new()));
                l.0 += geometric;
                l.1 += *nrat as i64;
                l.2.extend(syms.iter().map(|(s, _)| (s.clone(), -1)));
            }
        }
        geo.insert(key.clone(), StratumGeo { euler: Some(geometric), class: Some(class_poly(*nrat as i64, 0, &syms)) });
    }
    for &e in &exc {
        let (geometric, nrat, syms) = lost.get(&e).cloned().unwrap_or((0, 0, Vec::new()));
        let key: Key = [e].into_iter().collect();
        geo.insert(key, StratumGeo { euler: Some(2 - geometric), class: Some(class_poly(1 - nrat, 1, &syms)) });
    }
    let root = &tree.nodes[0];
    if let Some(c) = region_center(tree) {
        if root.blown.contains(c) {
            geo.entry(Key::new()).or_insert(StratumGeo { euler: Some(0), class: Some(class_poly(0, 0, &[])) });
        } else {
            let key: Key = root.visible.iter().filter(|v| v.h.eval(&[c.0.clone(), c.1.clone()]).is_zero()).map(|v| v.comp).collect();
            geo.insert(key, StratumGeo { euler: Some(1), class: Some(class_poly(1, 0, &[])) });
        }
    }
    let mut components: BTreeSet<usize> = exc.iter().copied().collect();
    for k in geo.keys() {
        components.extend(k.iter().copied());
    }
    if !polydisc {
        components.extend(0..tree.registry.len());
    }
    let mut keys: BTreeSet<Key> = geo.keys().cloned().collect();
    keys.insert(Key::new());
    if polydisc {
        // strata of strict transforms alone have no points over the center
        for c in components.iter().filter(|&&c| !tree.registry[c].exceptional) {
            let k: Key = [*c].into_iter().collect();
            geo.entry(k).or_insert(StratumGeo { euler: Some(0), class: Some(class_poly(0, 0, &[])) });
        }
        geo.entry(Key::new()).or_insert(StratumGeo { euler: Some(0), class: Some(class_poly(0, 0, &[])) });
    }
    Skeleton { keys, geo, symbols, components: components.into_iter().collect() }
}

fn qconst(n: i64) -> MultiPoly {
    Poly::constant(&["q"], int(n))
}

fn assemble(
    tree: &BlowupTree,
    sk: &Skeleton,
    counts: &BTreeMap<Key, MultiPoly>,
    kpoints: &BTreeMap<usize, bool>,
    root_classes: bool,
) -> ResolutionDatum {
    let components = sk
        .components
        .iter()
        .map(|&c| {
            let e = &tree.registry[c];
            let mut comp = Component::new(&e.id, e.nf, e.ng, e.v, e.exceptional);
            comp.has_k_points = kpoints.get(&c).copied().unwrap_or(true);
            comp
        })
        .collect();
    let mut keys: BTreeSet<Key> = sk.keys.clone();
    keys.extend(counts.keys().cloned());
    let strata = keys
        .into_iter()
        .filter_map(|k| {
            let count = counts.get(&k).cloned().unwrap_or_else(|| qconst(0));
            let g = sk.geo.get(&k);
            let euler = g.and_then(|g| g.euler);
            let mut class = g.and_then(|g| g.class.clone());
            if class.is_none() && root_classes {
                class = Some(count.rename(&["L"]));
            }
            if count.is_zero() && euler.unwrap_or(0) == 0 && class.as_ref().is_none_or(|c| c.is_zero()) && !k.is_empty() {
                return None;
            }
            let ids = ids_of(tree, &k);
            let mut s = Stratum::new(ids.iter().map(|s| s.as_str()));
            s.count = Some(count);
            s.euler = euler;
            s.groth_class = class;
            Some(s)
        })
        .collect();
    ResolutionDatum { n: 2, components, strata, adapted: tree.adapted }
}

trait Rename {
    fn rename(&self, vars: &[&str]) -> MultiPoly;
}

impl Rename for MultiPoly {
    fn rename(&self, vars: &[&str]) -> MultiPoly {
        Poly::from_terms(vars.iter().map(|s| s.to_string()).collect(), self.terms().map(|(e, c)| (e.clone(), c.clone())))
    }
}

fn notes_for(tree: &BlowupTree, polydisc: bool) -> Vec<String> {
    let mut notes: Vec<String> = tree.diagnostics.clone();
    if !polydisc {
        notes.push("Euler characteristics of strata away from the exceptional locus are not computed".into());
    }
    notes
}

/// Datum at a fixed prime: counts are integers.
pub fn extract_datum(tree: &BlowupTree, p: u64) -> Result<Extraction, Error> {
    let sk = skeleton(tree);
    let data = prime_data(tree, p)?;
    let counts: BTreeMap<Key, MultiPoly> = data.counts.iter().map(|(k, &c)| (k.clone(), qconst(c as i64))).collect();
    let mut kp = BTreeMap::new();
    for &c in &sk.components {
        kp.insert(c, kpoints_from(tree, &data, c, p)?);
    }
    let datum = assemble(tree, &sk, &counts, &kp, false);
    let symbols = sk
        .symbols
        .iter()
        .map(|(k, phi)| Ok((k.clone(), (phi.clone(), qconst(fp_roots(&fp_from(phi, p)?, p) as i64)))))
        .collect::<Result<_, Error>>()?;
    Ok(Extraction { datum, symbols, notes: notes_for(tree, region_center(tree).is_some()), primes: vec![p] })
}

const SAMPLES: usize = 6;

fn fit(primes: &[u64], values: &[i64], what: &str, class: Option<ResidueClass>) -> Result<MultiPoly, Error> {
    let xs: Vec<Rational> = primes.iter().map(|&p| int(p as i64)).collect();
    let ys: Vec<Rational> = values.iter().map(|&v| int(v)).collect();
    let u = interpolate(&xs[..3], &ys[..3]);
    for (x, y) in xs.iter().zip(&ys).skip(3) {
        if &u.eval(x) != y {
            let scope = match class {
                Some(c) => format!("primes ≡ {} mod {}", c.residue, c.modulus),
                None => "all primes".to_string(),
            };
            return Err(Error::Invalid(format!("count of {} is not a polynomial in q of degree ≤ 2 on {}; supply a residue class", what, scope)));
        }
    }
    Ok(bivariate::from_univariate(&u, 0).with_vars(&["x"]).unwrap().rename(&["q"]))
}

/// Datum with counts as polynomials in `q`, valid for all good primes in
/// `class` (or all good primes). Counts are sampled at several primes and
/// interpolated with degree ≤ 2; extra samples verify the fit.
pub fn extract_datum_symbolic(tree: &BlowupTree, class: Option<ResidueClass>) -> Result<Extraction, Error> {
    let sk = skeleton(tree);
    let mut primes = Vec::new();
    let mut data = Vec::new();
    let mut p = 3u64;
    while primes.len() < SAMPLES {
        p += 2;
        if p > 2000 {
            return Err(Error::Invalid("not enough good primes in the residue class".into()));
        }
        if !is_prime(p) || class.is_some_and(|c| !c.contains(p)) {
            continue;
        }
        match prime_data(tree, p) {
            Ok(d) => {
                primes.push(p);
                data.push(d);
            }
            Err(Error::BadPrime { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    let mut keys: BTreeSet<Key> = BTreeSet::new();
    for d in &data {
        keys.extend(d.counts.keys().cloned());
    }
    let mut counts = BTreeMap::new();
    for k in keys {
        let vals: Vec<i64> = data.iter().map(|d| d.counts.get(&k).copied().unwrap_or(0) as i64).collect();
        let label = format!("{{{}}}", ids_of(tree, &k).join(","));
        counts.insert(k, fit(&primes, &vals, &label, class)?);
    }
    let mut kp = BTreeMap::new();
    for &c in &sk.components {
        let flags: Vec<bool> = data.iter().zip(&primes).map(|(d, &p)| kpoints_from(tree, d, c, p)).collect::<Result<_, _>>()?;
        if flags.iter().any(|&f| f != flags[0]) {
            return Err(Error::Undecided(format!(
                "K-points of {} depend on p within the residue class",
                tree.registry[c].id
            )));
        }
        kp.insert(c, flags[0]);
    }
    let polydisc = region_center(tree).is_some();
    let datum = assemble(tree, &sk, &counts, &kp, !polydisc);
    let mut symbols = BTreeMap::new();
    for (k, phi) in &sk.symbols {
        let vals: Vec<i64> = primes.iter().map(|&p| Ok(fp_roots(&fp_from(phi, p)?, p) as i64)).collect::<Result<_, Error>>()?;
        symbols.insert(k.clone(), (phi.clone(), fit(&primes, &vals, k, class)?));
    }
    let mut notes = notes_for(tree, polydisc);
    if !polydisc {
        notes.push("classes of strata in the affine chart are their point-count polynomials".into());
    }
    Ok(Extraction { datum, symbols, notes, primes })
}

#[cfg(test)]
mod tests {
    use super::super::{adapted_refine, resolve_embedded, XY};
    use super::*;
    use crate::cli::expr::{parse_poly, parse_zeta};
    use crate::zeta::denef_zeta;

    fn pair(f: &str, g: &str, region: Region) -> PlaneCurvePair {
        PlaneCurvePair::new(parse_poly(f, &XY).unwrap(), parse_poly(g, &XY).unwrap(), region).unwrap()
    }

    fn tree(f: &str, g: &str, region: Region) -> BlowupTree {
        adapted_refine(resolve_embedded(&pair(f, g, region)).unwrap()).unwrap()
    }

    fn mod4(r: u64) -> Option<ResidueClass> {
        Some(ResidueClass { residue: r, modulus: 4 })
    }

    #[test]
    fn case_two_counts_at_seven() {
        let t = tree("x^2+y^2", "x^4+y^4", Region::origin());
        let ex = extract_datum(&t, 7).unwrap();
        let e1 = ex.datum.strata.iter().find(|s| s.ids.len() == 1 && s.ids.contains("E1")).unwrap();
        assert_eq!(e1.count.as_ref().unwrap().constant_term(), int(8));
        let z = denef_zeta(&ex.datum).unwrap();
        let expected = parse_zeta("(q^2-1)/(q^2*(q^(2-2*s)-1))").unwrap();
        assert_eq!(z.evaluate(&int(7), &Rational::new(1.into(), 3.into())).unwrap(), expected.evaluate(&int(7), &Rational::new(1.into(), 3.into())).unwrap());
    }

    #[test]
    fn symbolic_cases() {
        let t = tree("x^2+y^2", "x^4+y^4", Region::origin());
        let ex = extract_datum_symbolic(&t, mod4(3)).unwrap();
        assert!(denef_zeta(&ex.datum).unwrap().equals(&parse_zeta("(q^2-1)/(q^2*(q^(2-2*s)-1))").unwrap()));

        let t = tree("x^2-y^2", "x^2", Region::FullLattice);
        let ex = extract_datum_symbolic(&t, None).unwrap();
        let z = denef_zeta(&ex.datum).unwrap();
        let expected = parse_zeta("(q^(1+s)+q^2*(q-2)*q^(-s)+q^(2-2*s)-2*q+1)/((q+1)*(q^(1+s)-1)*(q^(1-2*s)-1))").unwrap();
        assert!(z.equals(&expected), "{}", z);
    }

    #[test]
    fn bad_primes_rejected() {
        let t = tree("x^2-3*y^2", "x^2", Region::FullLattice);
        assert!(matches!(extract_datum(&t, 3), Err(Error::BadPrime { .. })));
        assert!(extract_datum(&t, 5).is_ok());
    }

    #[test]
    fn k_points() {
        let h = parse_poly("y^2+x^2", &XY).unwrap();
        let o = (int(0), int(0));
        assert!(!curve_has_kpoints_near(&h, &o, 7).unwrap());
        assert!(curve_has_kpoints_near(&h, &o, 5).unwrap());
        let t = tree("y^2+x^4", "x^2+y^4", Region::origin());
        let e = t.exceptional_ids()[0];
        assert!(component_has_kpoints(&t, e, 7).unwrap());
    }

    #[test]
    fn count_sanity_full_lattice() {
        let t = tree("x^2-y^2", "x^2", Region::FullLattice);
        for p in [5u64, 7, 11] {
            let ex = extract_datum(&t, p).unwrap();
            let total: Rational = ex.datum.strata.iter().map(|s| s.count.as_ref().unwrap().constant_term()).sum();
            assert_eq!(total, int((p * p + p * t.blowup_count() as u64) as i64));
        }
    }
}
