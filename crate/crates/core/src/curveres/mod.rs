//! Embedded and adapted resolution of plane-curve pairs `(f, g)` over ℚ by
//! point blow-ups, and extraction of the numerical data.
//!
//! Every chart has local coordinates `(x, y)`, a polynomial map to the
//! original plane, and the local equations `h_i` of all components visible
//! on it, so that `f∘φ = c_f ∏ h_i^{N_f,i}` and `g∘φ = c_g ∏ h_i^{N_g,i}`.
//! Blowing up `(a, b)` creates the charts `(a + x, b + xy)` (exceptional
//! curve `x = 0`) and `(a + xy, b + y)` (exceptional curve `y = 0`). Points are
//! counted once: the root chart owns the plane minus blown-up centers, the
//! first child of a blow-up owns the line `x = 0`, the second owns its origin.

mod extract;
mod special;

pub use extract::{component_has_kpoints, curve_has_kpoints_near, extract_datum, extract_datum_symbolic, Extraction, ResidueClass};
pub use special::{special_values, SpecialValues};

use crate::exactalg::bivariate::{self, restrict, Solutions};
use crate::exactalg::poly::Poly;
use crate::exactalg::scalar::{fmt_rat, Rational};
use crate::exactalg::upoly::UPoly;
use crate::{Error, MultiPoly};
use num_traits::Zero;
use std::collections::BTreeSet;
use std::fmt::Write as _;

pub const XY: [&str; 2] = ["x", "y"];

pub type Point = (Rational, Rational);

#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    /// `ℤ_p²`
    FullLattice,
    /// `center + p^m ℤ_p²`; only `m = 1` is supported by the resolver.
    Polydisc { center: Point, m: u32 },
}

impl Region {
    pub fn origin() -> Self {
        Region::Polydisc { center: (Rational::zero(), Rational::zero()), m: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct PlaneCurvePair {
    pub f: MultiPoly,
    pub g: MultiPoly,
    pub region: Region,
}

impl PlaneCurvePair {
    pub fn new(f: MultiPoly, g: MultiPoly, region: Region) -> Result<Self, Error> {
        let f = f.with_vars(&XY).ok_or_else(|| Error::Invalid("f must be a polynomial in x, y".into()))?;
        let g = g.with_vars(&XY).ok_or_else(|| Error::Invalid("g must be a polynomial in x, y".into()))?;
        if f.is_zero() || g.is_zero() {
            return Err(Error::Invalid("f and g must be nonzero".into()));
        }
        if f.is_laurent() || g.is_laurent() {
            return Err(Error::Invalid("f and g must be polynomials".into()));
        }
        let (lf, lg) = (f.leading().unwrap().1.clone(), g.leading().unwrap().1.clone());
        if f.scale(&lg) == g.scale(&lf) {
            return Err(Error::Invalid("f/g is constant".into()));
        }
        if let Region::Polydisc { m, .. } = &region {
            if *m != 1 {
                return Err(Error::Invalid("only polydiscs of radius 1/p are supported".into()));
            }
        }
        Ok(PlaneCurvePair { f, g, region })
    }
}

/// A component of the total transform: a strict transform of a
/// ℚ-irreducible factor of `f·g`, or an exceptional curve.
#[derive(Clone, Debug)]
pub struct RegistryEntry {
    pub id: String,
    pub nf: u32,
    pub ng: u32,
    pub v: u32,
    pub exceptional: bool,
    /// Original factor (strict transforms).
    pub equation: Option<MultiPoly>,
    /// Image of the curve in the original plane (exceptional curves).
    pub root_point: Option<Point>,
}

impl RegistryEntry {
    pub fn n(&self) -> i64 {
        self.nf as i64 - self.ng as i64
    }
}

#[derive(Clone, Debug)]
pub struct Visible {
    pub comp: usize,
    pub h: MultiPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fresh {
    Plane,
    Line,
    Origin,
}

#[derive(Clone, Debug)]
pub struct BlowupNode {
    pub id: String,
    pub parent: Option<usize>,
    /// Blown-up point in the parent's coordinates.
    pub center: Option<Point>,
    pub map: (MultiPoly, MultiPoly),
    pub visible: Vec<Visible>,
    /// The exceptional curve created with this chart (`x = 0` or `y = 0`).
    pub exceptional: Option<usize>,
    pub fresh: Fresh,
    pub blown: Vec<Point>,
    pub root_point: Option<Point>,
    pub children: Vec<usize>,
}

impl BlowupNode {
    pub fn visible_of(&self, comp: usize) -> Option<&MultiPoly> {
        self.visible.iter().find(|v| v.comp == comp).map(|v| &v.h)
    }
}

#[derive(Clone, Debug)]
pub struct BlowupTree {
    pub pair: PlaneCurvePair,
    pub nodes: Vec<BlowupNode>,
    pub registry: Vec<RegistryEntry>,
    pub c_f: Rational,
    pub c_g: Rational,
    pub adapted: bool,
    pub diagnostics: Vec<String>,
    pub max_blowups: usize,
    pub log: Vec<String>,
}

fn shifted(h: &MultiPoly, p: &Point) -> MultiPoly {
    let x = bivariate::x().add(&bivariate::cst(p.0.clone()));
    let y = bivariate::y().add(&bivariate::cst(p.1.clone()));
    h.compose(&[x, y]).unwrap()
}

/// Multiplicity of `h` at `p`.
pub fn multiplicity(h: &MultiPoly, p: &Point) -> u32 {
    let o = shifted(h, p).order();
    if o == i32::MAX {
        u32::MAX
    } else {
        o as u32
    }
}

fn eval_at(h: &MultiPoly, p: &Point) -> Rational {
    h.eval(&[p.0.clone(), p.1.clone()])
}

fn gradient(h: &MultiPoly, p: &Point) -> (Rational, Rational) {
    (eval_at(&h.derivative(0), p), eval_at(&h.derivative(1), p))
}

fn fmt_point(p: &Point) -> String {
    format!("({}, {})", fmt_rat(&p.0), fmt_rat(&p.1))
}

impl BlowupTree {
    /// Root chart with one registry entry per ℚ-irreducible factor of `f·g`.
    pub fn new(pair: PlaneCurvePair) -> Self {
        let (c_f, ff) = bivariate::factor(&pair.f);
        let (c_g, gf) = bivariate::factor(&pair.g);
        let mut factors: Vec<(MultiPoly, u32, u32)> = Vec::new();
        for (h, a) in ff {
            factors.push((h, a, 0));
        }
        for (h, b) in gf {
            match factors.iter_mut().find(|e| e.0 == h) {
                Some(e) => e.2 = b,
                None => factors.push((h, 0, b)),
            }
        }
        let mut registry = Vec::new();
        let mut visible = Vec::new();
        for (k, (h, a, b)) in factors.into_iter().enumerate() {
            registry.push(RegistryEntry {
                id: format!("S{}", k + 1),
                nf: a,
                ng: b,
                v: 1,
                exceptional: false,
                equation: Some(h.clone()),
                root_point: None,
            });
            visible.push(Visible { comp: k, h });
        }
        let root = BlowupNode {
            id: "root".into(),
            parent: None,
            center: None,
            map: (bivariate::x(), bivariate::y()),
            visible,
            exceptional: None,
            fresh: Fresh::Plane,
            blown: Vec::new(),
            root_point: None,
            children: Vec::new(),
        };
        let mut t = BlowupTree {
            pair,
            nodes: vec![root],
            registry,
            c_f,
            c_g,
            adapted: false,
            diagnostics: Vec::new(),
            max_blowups: 64,
            log: Vec::new(),
        };
        for e in t.registry.clone() {
            let h = e.equation.as_ref().unwrap();
            t.log.push(format!("{} : {} = 0  (Nf, Ng, v) = ({}, {}, {})", e.id, h, e.nf, e.ng, e.v));
        }
        t
    }

    pub fn blowup_count(&self) -> usize {
        self.registry.iter().filter(|e| e.exceptional).count()
    }

    pub fn exceptional_ids(&self) -> Vec<usize> {
        (0..self.registry.len()).filter(|&i| self.registry[i].exceptional).collect()
    }

    /// Whether `p` lies in the part of the chart owned by `node`.
    fn owns(&self, node: usize, p: &Point) -> bool {
        let n = &self.nodes[node];
        if n.blown.contains(p) {
            return false;
        }
        match n.fresh {
            Fresh::Plane => true,
            Fresh::Line => p.0.is_zero(),
            Fresh::Origin => p.0.is_zero() && p.1.is_zero(),
        }
    }

    /// Blow up `point` on the chart of `node`; returns the two new charts.
    pub fn blowup_at(&mut self, node: usize, point: &Point) -> Result<(usize, usize), Error> {
        if node >= self.nodes.len() || !self.owns(node, point) {
            return Err(Error::PointNotOnChart(format!("{} on chart {}", fmt_point(point), node)));
        }
        if self.blowup_count() >= self.max_blowups {
            return Err(Error::DepthExceeded(self.max_blowups));
        }
        let parent = self.nodes[node].clone();
        let mut nf = 0u32;
        let mut ng = 0u32;
        let mut v = 2u32;
        let mults: Vec<u32> = parent.visible.iter().map(|vis| multiplicity(&vis.h, point)).collect();
        for (vis, &m) in parent.visible.iter().zip(&mults) {
            let e = &self.registry[vis.comp];
            nf += m * e.nf;
            ng += m * e.ng;
            v += m * (e.v - 1);
        }
        let root_point = match parent.fresh {
            Fresh::Plane => point.clone(),
            _ => parent.root_point.clone().unwrap(),
        };
        let eid = self.registry.len();
        let name = format!("E{}", self.blowup_count() + 1);
        self.registry.push(RegistryEntry {
            id: name.clone(),
            nf,
            ng,
            v,
            exceptional: true,
            equation: None,
            root_point: Some(root_point.clone()),
        });
        let (a, b) = (bivariate::cst(point.0.clone()), bivariate::cst(point.1.clone()));
        let (x, y) = (bivariate::x(), bivariate::y());
        let xy = x.mul(&y);
        let subs = [[a.add(&x), b.add(&xy)], [a.add(&xy), b.add(&y)]];
        let mut children = [0usize; 2];
        for (k, sub) in subs.iter().enumerate() {
            let exc_var = if k == 0 { x.clone() } else { y.clone() };
            let mut visible = Vec::new();
            for (vis, &m) in parent.visible.iter().zip(&mults) {
                let total = vis.h.compose(sub).unwrap();
                let strict = total.div_exact_poly(&exc_var.pow(m)).expect("exact strict transform");
                if !strict.is_constant() {
                    visible.push(Visible { comp: vis.comp, h: strict });
                }
            }
            visible.push(Visible { comp: eid, h: exc_var.clone() });
            let map = (parent.map.0.compose(sub).unwrap(), parent.map.1.compose(sub).unwrap());
            let child = BlowupNode {
                id: format!("{}.{}", name, k + 1),
                parent: Some(node),
                center: Some(point.clone()),
                map,
                visible,
                exceptional: Some(eid),
                fresh: if k == 0 { Fresh::Line } else { Fresh::Origin },
                blown: Vec::new(),
                root_point: Some(root_point.clone()),
                children: Vec::new(),
            };
            children[k] = self.nodes.len();
            self.nodes.push(child);
        }
        let n = &mut self.nodes[node];
        n.blown.push(point.clone());
        n.children.extend(children);
        self.log.push(format!(
            "blow up {} on chart {} -> {} (Nf, Ng, v) = ({}, {}, {}), N = {}",
            fmt_point(point),
            parent.id,
            name,
            nf,
            ng,
            v,
            nf as i64 - ng as i64
        ));
        Ok((children[0], children[1]))
    }

    /// Components through `p` on `node` (indices into `visible`).
    fn through(&self, node: usize, p: &Point) -> Vec<usize> {
        let n = &self.nodes[node];
        (0..n.visible.len()).filter(|&i| eval_at(&n.visible[i].h, p).is_zero()).collect()
    }

    /// Local check at a rational point: at most two smooth components crossing
    /// transversally, and same-sign `N` when `adapted`.
    fn is_bad_point(&self, node: usize, p: &Point, adapted: bool) -> bool {
        let n = &self.nodes[node];
        let at = self.through(node, p);
        if at.len() > 2 {
            return true;
        }
        let grads: Vec<_> = at.iter().map(|&i| gradient(&n.visible[i].h, p)).collect();
        if grads.iter().any(|g| g.0.is_zero() && g.1.is_zero()) {
            return true;
        }
        if at.len() == 2 {
            let det = &grads[0].0 * &grads[1].1 - &grads[0].1 * &grads[1].0;
            if det.is_zero() {
                return true;
            }
            if adapted {
                let (a, b) = (self.registry[n.visible[at[0]].comp].n(), self.registry[n.visible[at[1]].comp].n());
                if a * b < 0 {
                    return true;
                }
            }
        }
        false
    }

    /// Points of the owned locus of `node` that need a blow-up. Non-rational
    /// ones are fatal in the embedded pass; in the adapted pass, points that
    /// are bad only because of mixed signs are returned as diagnostics.
    fn bad_points(&self, node: usize, adapted: bool) -> Result<(Vec<Point>, Vec<String>), Error> {
        let n = &self.nodes[node];
        let mut pts: BTreeSet<Point> = BTreeSet::new();
        let mut notes = Vec::new();
        let non_rational = |m: &UPoly<Rational>| Error::NonRationalCenter { minpoly: upoly_string(m, "t") };
        match n.fresh {
            Fresh::Plane => match &self.pair.region {
                Region::Polydisc { center, .. } => {
                    if self.owns(node, center) && self.is_bad_point(node, center, adapted) {
                        pts.insert(center.clone());
                    }
                }
                Region::FullLattice => {
                    let hs: Vec<&MultiPoly> = n.visible.iter().map(|v| &v.h).collect();
                    let mut systems: Vec<Vec<MultiPoly>> = Vec::new();
                    for h in &hs {
                        systems.push(vec![(*h).clone(), h.derivative(0), h.derivative(1)]);
                    }
                    for i in 0..hs.len() {
                        for j in i + 1..hs.len() {
                            let jac = hs[i].derivative(0).mul(&hs[j].derivative(1)).sub(&hs[i].derivative(1).mul(&hs[j].derivative(0)));
                            systems.push(vec![hs[i].clone(), hs[j].clone(), jac]);
                            for k in j + 1..hs.len() {
                                systems.push(vec![hs[i].clone(), hs[j].clone(), hs[k].clone()]);
                            }
                        }
                    }
                    for sys in &systems {
                        let sol = solve_checked(sys)?;
                        if let Some(m) = sol.nonrational.first() {
                            return Err(non_rational(m));
                        }
                        pts.extend(sol.rational.into_iter());
                    }
                    if adapted {
                        for i in 0..hs.len() {
                            for j in i + 1..hs.len() {
                                let (a, b) = (self.registry[n.visible[i].comp].n(), self.registry[n.visible[j].comp].n());
                                if a * b >= 0 {
                                    continue;
                                }
                                let sol = solve_checked(&[hs[i].clone(), hs[j].clone()])?;
                                pts.extend(sol.rational.into_iter());
                                for m in sol.nonrational {
                                    notes.push(format!(
                                        "{} and {} meet with opposite signs at non-rational points (x-coordinate root of {}); left unrefined",
                                        self.registry[n.visible[i].comp].id,
                                        self.registry[n.visible[j].comp].id,
                                        upoly_string(&m, "x")
                                    ));
                                }
                            }
                        }
                    }
                    pts.retain(|p| self.owns(node, p));
                }
            },
            Fresh::Line => {
                let e = n.exceptional.unwrap();
                let ne = self.registry[e].n();
                let rs: Vec<(usize, UPoly<Rational>)> = n
                    .visible
                    .iter()
                    .filter(|v| v.comp != e)
                    .map(|v| (v.comp, restrict(&v.h, 1, &Rational::zero())))
                    .filter(|(_, r)| r.deg() > 0)
                    .collect();
                let mut bad: Vec<UPoly<Rational>> = Vec::new();
                for (i, (_, r)) in rs.iter().enumerate() {
                    bad.push(r.gcd(&r.derivative()));
                    for (_, s) in &rs[i + 1..] {
                        bad.push(r.gcd(s));
                    }
                }
                let blown: Vec<Rational> = n.blown.iter().map(|p| p.1.clone()).collect();
                for b in bad.iter().filter(|b| b.deg() > 0) {
                    for (phi, _) in b.factor() {
                        if phi.deg() == 1 {
                            let t0 = -phi.coeff(0) / phi.coeff(1);
                            if !blown.contains(&t0) {
                                pts.insert((Rational::zero(), t0));
                            }
                        } else {
                            return Err(non_rational(&phi));
                        }
                    }
                }
                if adapted {
                    for (c, r) in &rs {
                        if self.registry[*c].n() * ne >= 0 {
                            continue;
                        }
                        for (phi, _) in r.factor() {
                            if phi.deg() == 1 {
                                let t0 = -phi.coeff(0) / phi.coeff(1);
                                if !blown.contains(&t0) {
                                    pts.insert((Rational::zero(), t0));
                                }
                            } else {
                                notes.push(format!(
                                    "{} meets {} with opposite signs at the roots of {}; left unrefined",
                                    self.registry[*c].id,
                                    self.registry[e].id,
                                    upoly_string(&phi, "t")
                                ));
                            }
                        }
                    }
                }
            }
            Fresh::Origin => {
                let o = (Rational::zero(), Rational::zero());
                if self.owns(node, &o) && self.is_bad_point(node, &o, adapted) {
                    pts.insert(o);
                }
            }
        }
        Ok((pts.into_iter().collect(), notes))
    }

    fn run_pass(&mut self, adapted: bool) -> Result<(), Error> {
        let mut i = 0;
        while i < self.nodes.len() {
            let (pts, notes) = self.bad_points(i, adapted)?;
            for note in notes {
                if !self.diagnostics.contains(&note) {
                    self.diagnostics.push(note);
                }
            }
            for p in pts {
                self.blowup_at(i, &p)?;
            }
            i += 1;
        }
        Ok(())
    }

    /// Whether the total transform is simple normal crossings everywhere
    /// on the owned loci.
    pub fn is_snc(&self) -> Result<bool, Error> {
        for i in 0..self.nodes.len() {
            if !self.bad_points(i, false)?.0.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Check `f∘φ = c_f ∏ h^{N_f}` and `g∘φ = c_g ∏ h^{N_g}` on every chart.
    pub fn check_factorizations(&self) -> bool {
        self.nodes.iter().all(|n| {
            let (mut pf, mut pg) = (bivariate::cst(self.c_f.clone()), bivariate::cst(self.c_g.clone()));
            for v in &n.visible {
                let e = &self.registry[v.comp];
                pf = pf.mul(&v.h.pow(e.nf));
                pg = pg.mul(&v.h.pow(e.ng));
            }
            let map = [n.map.0.clone(), n.map.1.clone()];
            let f = self.pair.f.compose(&map).unwrap();
            let g = self.pair.g.compose(&map).unwrap();
            f == pf && g == pg
        })
    }

    /// Human-readable chart tree.
    pub fn render_log(&self) -> String {
        let mut s = String::new();
        for l in &self.log {
            let _ = writeln!(s, "{}", l);
        }
        for n in &self.nodes {
            let _ = writeln!(s, "chart {} : x = {}, y = {}", n.id, n.map.0, n.map.1);
            for v in &n.visible {
                let _ = writeln!(s, "    {} : {} = 0", self.registry[v.comp].id, v.h);
            }
        }
        for d in &self.diagnostics {
            let _ = writeln!(s, "note: {}", d);
        }
        s
    }
}

fn solve_checked(sys: &[MultiPoly]) -> Result<Solutions, Error> {
    bivariate::solve(sys).ok_or_else(|| Error::Invalid("bad-point system is not zero-dimensional".into()))
}

pub(crate) fn upoly_string(u: &UPoly<Rational>, var: &str) -> String {
    let p = Poly::from_terms(
        vec![var.to_string()],
        u.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (vec![i as i32], c.clone())),
    );
    p.to_string()
}

/// Rational points of the region where a blow-up is required before any
/// resolution step.
pub fn base_locus(pair: &PlaneCurvePair) -> Result<Vec<Point>, Error> {
    let t = BlowupTree::new(pair.clone());
    Ok(t.bad_points(0, false)?.0)
}

/// Blow up until the total transform of `f·g` is normal crossings.
pub fn resolve_embedded(pair: &PlaneCurvePair) -> Result<BlowupTree, Error> {
    let mut t = BlowupTree::new(pair.clone());
    t.run_pass(false)?;
    Ok(t)
}

/// Further blow-ups until at every point all local `N_i` share a sign.
pub fn adapted_refine(mut tree: BlowupTree) -> Result<BlowupTree, Error> {
    tree.run_pass(true)?;
    tree.adapted = tree.diagnostics.is_empty();
    Ok(tree)
}

/// The `(N_f, N_g, v)` triples of the registry, in registry order.
pub fn numerical_data(tree: &BlowupTree) -> Vec<(String, u32, u32, u32)> {
    tree.registry.iter().map(|e| (e.id.clone(), e.nf, e.ng, e.v)).collect()
}

/// `(N, v)` for the registry, sorted.
pub fn n_form(tree: &BlowupTree) -> Vec<(i64, u32)> {
    let mut v: Vec<_> = tree.registry.iter().map(|e| (e.n(), e.v)).collect();
    v.sort();
    v
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::expr::parse_poly;
    use crate::exactalg::scalar::int;

    fn pp(s: &str) -> MultiPoly {
        parse_poly(s, &XY).unwrap()
    }

    fn pair(f: &str, g: &str, region: Region) -> PlaneCurvePair {
        PlaneCurvePair::new(pp(f), pp(g), region).unwrap()
    }

    #[test]
    fn base_loci() {
        let o = (int(0), int(0));
        assert_eq!(base_locus(&pair("x^2-y^2", "x^2", Region::FullLattice)).unwrap(), vec![o.clone()]);
        assert!(base_locus(&pair("x", "1", Region::FullLattice)).unwrap().is_empty());
        assert_eq!(base_locus(&pair("y^2+x^4", "x^2+y^4", Region::origin())).unwrap(), vec![o]);
        assert!(matches!(
            base_locus(&pair("(x^2-2)*(x^2-2+y^2)", "1", Region::FullLattice)),
            Err(Error::NonRationalCenter { .. })
        ));
    }

    #[test]
    fn first_blowups() {
        let mut t = BlowupTree::new(pair("x^2-y^2", "x^2", Region::FullLattice));
        t.blowup_at(0, &(int(0), int(0))).unwrap();
        let e = t.registry.last().unwrap();
        assert_eq!((e.nf, e.ng, e.v), (2, 2, 2));
        assert!(t.check_factorizations());

        let mut t = BlowupTree::new(pair("x", "1", Region::FullLattice));
        t.blowup_at(0, &(int(1), int(1))).unwrap();
        let e = t.registry.last().unwrap();
        assert_eq!((e.nf, e.ng, e.v), (0, 0, 2));
        assert!(t.check_factorizations());
        assert!(matches!(t.blowup_at(0, &(int(1), int(1))), Err(Error::PointNotOnChart(_))));
    }

    #[test]
    fn critical_example_resolution() {
        let t = adapted_refine(resolve_embedded(&pair("x^2-y^2", "x^2", Region::FullLattice)).unwrap()).unwrap();
        assert_eq!(t.blowup_count(), 1);
        assert!(t.adapted);
        assert_eq!(n_form(&t), vec![(-2, 1), (0, 2), (1, 1), (1, 1)]);
        assert!(t.is_snc().unwrap());
        assert!(t.check_factorizations());
    }

    #[test]
    fn case_four_resolution() {
        let t = resolve_embedded(&pair("y^2+x^4", "x^2+y^4", Region::origin())).unwrap();
        assert_eq!(n_form(&t), vec![(-2, 3), (-1, 1), (0, 2), (1, 1), (2, 3)]);
        let t = adapted_refine(t).unwrap();
        assert_eq!(t.blowup_count(), 3);
        assert!(t.adapted);
        assert!(t.check_factorizations());
    }

    #[test]
    fn adapted_pass_separates_indeterminacy() {
        let t = resolve_embedded(&pair("x", "y", Region::FullLattice)).unwrap();
        assert_eq!(t.blowup_count(), 0);
        let t = adapted_refine(t).unwrap();
        assert_eq!(t.blowup_count(), 1);
        assert_eq!(n_form(&t), vec![(-1, 1), (0, 2), (1, 1)]);
        assert!(t.adapted);
    }

    #[test]
    fn case_two_not_adaptable_over_q() {
        let t = resolve_embedded(&pair("x^2+y^2", "x^4+y^4", Region::origin())).unwrap();
        assert_eq!(n_form(&t), vec![(-2, 2), (-1, 1), (1, 1)]);
        let t = adapted_refine(t).unwrap();
        assert!(!t.adapted);
        assert!(!t.diagnostics.is_empty());
    }
}
