//! Numerical data of an embedded (or adapted) resolution and the pole
//! combinatorics that only depend on it.

use crate::exactalg::scalar::{fmt_rat, Rational};
use crate::exactalg::zetarat::ZetaRat;
use crate::{Error, MultiPoly};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

/// A component `E_i` of `σ^{-1}(D)` with data `(N_f, N_g, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub nf: u32,
    pub ng: u32,
    pub v: u32,
    pub exceptional: bool,
    pub has_k_points: bool,
}

impl Component {
    pub fn new(id: &str, nf: u32, ng: u32, v: u32, exceptional: bool) -> Self {
        Component { id: id.to_string(), nf, ng, v, exceptional, has_k_points: true }
    }

    /// `N = N_f − N_g`
    pub fn n(&self) -> i64 {
        self.nf as i64 - self.ng as i64
    }
}

/// A stratum `E_I° ∩ σ^{-1}W` with its point count, Euler number and class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub ids: BTreeSet<String>,
    /// Polynomial in `q`.
    pub count: Option<MultiPoly>,
    pub euler: Option<i64>,
    /// Polynomial in `L` (possibly with further opaque symbols).
    pub groth_class: Option<MultiPoly>,
}

impl Stratum {
    pub fn new<'a>(ids: impl IntoIterator<Item = &'a str>) -> Self {
        Stratum { ids: ids.into_iter().map(String::from).collect(), count: None, euler: None, groth_class: None }
    }

    pub fn with_count(mut self, c: MultiPoly) -> Self {
        self.count = Some(c);
        self
    }

    pub fn with_euler(mut self, e: i64) -> Self {
        self.euler = Some(e);
        self
    }

    pub fn with_class(mut self, c: MultiPoly) -> Self {
        self.groth_class = Some(c);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionDatum {
    pub n: u32,
    pub components: Vec<Component>,
    pub strata: Vec<Stratum>,
    pub adapted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Diagnostic {
    UnknownComponent { stratum: usize, id: String },
    DuplicateComponent { id: String },
    ZeroV { id: String },
    TooManyIds { stratum: usize },
    NegativeCount { stratum: usize },
    NotAdapted { stratum: usize },
}

/// Real part bound: `None` encodes ±∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaBeta {
    /// `None` means `+∞`.
    pub alpha: Option<Rational>,
    /// `None` means `−∞`.
    pub beta: Option<Rational>,
    pub t_alpha: Vec<String>,
    pub t_beta: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    PField,
    Real,
    Complex,
}

/// Arithmetic progression `start + k·step`, `k ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Progression {
    pub start: Rational,
    pub step: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleCandidate {
    pub real_part: Rational,
    /// Components producing this candidate (merged by real part and lattice).
    pub sources: Vec<String>,
    /// `(N, v)`
    pub lattice: (i64, i64),
    /// The order of χ must divide this number.
    pub chi_order_divisor: u32,
    pub field: FieldKind,
    pub arch: Option<Progression>,
}

impl PoleCandidate {
    pub fn source_component(&self) -> &str {
        &self.sources[0]
    }

    /// Admissible orders of χ: the divisors of `|N|`.
    pub fn chi_orders(&self) -> Vec<u32> {
        (1..=self.chi_order_divisor).filter(|d| self.chi_order_divisor % d == 0).collect()
    }
}

/// What the extremal-pole theorem predicts for a datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleExpectation {
    pub expect_alpha: Option<Rational>,
    pub expect_beta: Option<Rational>,
}

impl PoleExpectation {
    /// Check the prediction against the poles of a computed zeta function.
    pub fn check(&self, z: &ZetaRat) -> Result<(), String> {
        let poles = z.poles(None);
        for want in self.expect_alpha.iter().chain(self.expect_beta.iter()) {
            if !poles.iter().any(|p| &p.real_part == want && p.order >= 1) {
                return Err(format!("expected a pole with real part {}", fmt_rat(want)));
            }
        }
        Ok(())
    }

    pub fn expects_no_poles(&self) -> bool {
        self.expect_alpha.is_none() && self.expect_beta.is_none()
    }
}

impl ResolutionDatum {
    pub fn component(&self, id: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    /// Exchange the roles of f and g.
    pub fn swapped(&self) -> Self {
        let mut d = self.clone();
        for c in &mut d.components {
            std::mem::swap(&mut c.nf, &mut c.ng);
        }
        d
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        validate_datum(self)
    }

    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                json!({"id": c.id, "Nf": c.nf, "Ng": c.ng, "v": c.v, "exceptional": c.exceptional, "hasKPoints": c.has_k_points})
            })
            .collect();
        let strata: Vec<Value> = self
            .strata
            .iter()
            .map(|s| {
                let mut m = serde_json::Map::new();
                m.insert("ids".into(), json!(s.ids.iter().collect::<Vec<_>>()));
                if let Some(c) = &s.count {
                    m.insert("count".into(), json!(compact(&c.to_string())));
                }
                if let Some(e) = s.euler {
                    m.insert("euler".into(), json!(e));
                }
                if let Some(c) = &s.groth_class {
                    m.insert("class".into(), json!(compact(&c.to_string())));
                }
                Value::Object(m)
            })
            .collect();
        json!({"n": self.n, "components": comps, "strata": strata, "adapted": self.adapted})
    }

    /// Parse the datum schema; lowercase spellings of the keys are accepted too.
    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let bad = |m: &str| Error::Invalid(format!("datum: {}", m));
        let get = |o: &Value, keys: &[&str]| -> Option<Value> { keys.iter().find_map(|k| o.get(*k).cloned()) };
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing n"))? as u32;
        let mut components = Vec::new();
        for c in v.get("components").and_then(Value::as_array).ok_or_else(|| bad("missing components"))? {
            let id = c.get("id").and_then(Value::as_str).ok_or_else(|| bad("component id"))?.to_string();
            let num = |keys: &[&str]| -> Result<u32, Error> {
                get(c, keys).and_then(|x| x.as_u64()).map(|x| x as u32).ok_or_else(|| bad(&format!("component {} field {}", id, keys[0])))
            };
            components.push(Component {
                nf: num(&["Nf", "nf"])?,
                ng: num(&["Ng", "ng"])?,
                v: num(&["v"])?,
                exceptional: get(c, &["exceptional"]).and_then(|x| x.as_bool()).unwrap_or(false),
                has_k_points: get(c, &["hasKPoints", "haskpoints"]).and_then(|x| x.as_bool()).unwrap_or(true),
                id,
            });
        }
        let mut strata = Vec::new();
        for s in v.get("strata").and_then(Value::as_array).ok_or_else(|| bad("missing strata"))? {
            let ids = s
                .get("ids")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("stratum ids"))?
                .iter()
                .map(|x| x.as_str().map(String::from).ok_or_else(|| bad("stratum id")))
                .collect::<Result<BTreeSet<String>, Error>>()?;
            let poly_field = |key: &str, var: &str| -> Result<Option<MultiPoly>, Error> {
                match s.get(key) {
                    None | Some(Value::Null) => Ok(None),
                    Some(Value::String(src)) => crate::cli::expr::parse_poly_open(src, &[var]).map(Some),
                    Some(Value::Number(k)) => crate::cli::expr::parse_poly_open(&k.to_string(), &[var]).map(Some),
                    _ => Err(bad(key)),
                }
            };
            strata.push(Stratum {
                ids,
                count: poly_field("count", "q")?,
                euler: s.get("euler").and_then(Value::as_i64),
                groth_class: poly_field("class", "L")?,
            });
        }
        let adapted = v.get("adapted").and_then(Value::as_bool).unwrap_or(false);
        Ok(ResolutionDatum { n, components, strata, adapted })
    }
}

fn compact(s: &str) -> String {
    s.replace(' ', "")
}

pub fn validate_datum(d: &ResolutionDatum) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for c in &d.components {
        if !seen.insert(c.id.clone()) {
            out.push(Diagnostic::DuplicateComponent { id: c.id.clone() });
        }
        if c.v == 0 {
            out.push(Diagnostic::ZeroV { id: c.id.clone() });
        }
    }
    for (k, s) in d.strata.iter().enumerate() {
        for id in &s.ids {
            if d.component(id).is_none() {
                out.push(Diagnostic::UnknownComponent { stratum: k, id: id.clone() });
            }
        }
        let nonzero = s.count.as_ref().map(|c| !c.is_zero()).unwrap_or(true);
        if s.ids.len() > d.n as usize && nonzero {
            out.push(Diagnostic::TooManyIds { stratum: k });
        }
        if let Some(c) = &s.count {
            // sample at a few prime powers
            for q0 in [2i64, 3, 5, 7, 9, 11, 25] {
                let val = c.eval(&[Rational::from_integer(q0.into())]);
                if val.is_negative() || !val.is_integer() {
                    out.push(Diagnostic::NegativeCount { stratum: k });
                    break;
                }
            }
        }
        if d.adapted {
            let signs: Vec<i64> = s.ids.iter().filter_map(|id| d.component(id)).map(|c| c.n().signum()).collect();
            if signs.contains(&1) && signs.contains(&-1) {
                out.push(Diagnostic::NotAdapted { stratum: k });
            }
        }
    }
    out
}

pub fn alpha_beta(d: &ResolutionDatum) -> AlphaBeta {
    let mut alpha: Option<Rational> = None;
    let mut beta: Option<Rational> = None;
    let mut t_alpha = Vec::new();
    let mut t_beta = Vec::new();
    for c in d.components.iter().filter(|c| c.has_k_points && c.n() != 0) {
        let n = c.n();
        if n < 0 {
            let r = Rational::new((c.v as i64).into(), (-n).into());
            match &alpha {
                Some(a) if *a < r => {}
                Some(a) if *a == r => t_alpha.push(c.id.clone()),
                _ => {
                    alpha = Some(r);
                    t_alpha = vec![c.id.clone()];
                }
            }
        } else {
            let r = Rational::new((-(c.v as i64)).into(), n.into());
            match &beta {
                Some(b) if *b > r => {}
                Some(b) if *b == r => t_beta.push(c.id.clone()),
                _ => {
                    beta = Some(r);
                    t_beta = vec![c.id.clone()];
                }
            }
        }
    }
    AlphaBeta { alpha, beta, t_alpha, t_beta }
}

pub fn candidate_poles_padic(d: &ResolutionDatum) -> Vec<PoleCandidate> {
    let mut merged: BTreeMap<(Rational, (i64, i64)), PoleCandidate> = BTreeMap::new();
    for c in d.components.iter().filter(|c| c.has_k_points && c.n() != 0) {
        let n = c.n();
        let rp = Rational::new((-(c.v as i64)).into(), n.into());
        let key = (rp.clone(), (n, c.v as i64));
        merged
            .entry(key)
            .and_modify(|p| p.sources.push(c.id.clone()))
            .or_insert(PoleCandidate {
                real_part: rp,
                sources: vec![c.id.clone()],
                lattice: (n, c.v as i64),
                chi_order_divisor: n.unsigned_abs() as u32,
                field: FieldKind::PField,
                arch: None,
            });
    }
    merged.into_values().collect()
}

/// Candidate poles for `K = ℝ` or `K = ℂ`; `l` is the character exponent.
pub fn candidate_poles_arch(d: &ResolutionDatum, field: FieldKind, l: i64) -> Vec<PoleCandidate> {
    let mut out = Vec::new();
    for c in d.components.iter().filter(|c| c.has_k_points && c.n() != 0) {
        let n = c.n();
        let v = c.v as i64;
        let nn = Rational::from_integer(n.into());
        let vv = Rational::from_integer(v.into());
        let prog = match field {
            FieldKind::Complex => {
                let half_l = Rational::new(l.abs().into(), 2.into());
                if n > 0 {
                    Progression { start: -half_l - &vv / &nn, step: -Rational::one() / &nn }
                } else {
                    Progression { start: half_l + &vv / nn.abs(), step: Rational::one() / nn.abs() }
                }
            }
            // [K:ℝ] = 1
            _ => Progression { start: -&vv / &nn, step: -Rational::one() / &nn },
        };
        out.push(PoleCandidate {
            real_part: Rational::new((-v).into(), n.into()),
            sources: vec![c.id.clone()],
            lattice: (n, v),
            chi_order_divisor: n.unsigned_abs() as u32,
            field,
            arch: Some(prog),
        });
    }
    out.sort_by(|a, b| a.real_part.cmp(&b.real_part));
    out
}

pub fn extremal_pole_expectation(d: &ResolutionDatum, phi_positive_on_t_alpha: bool, phi_positive_on_t_beta: bool) -> PoleExpectation {
    let ab = alpha_beta(d);
    PoleExpectation {
        expect_alpha: if phi_positive_on_t_alpha { ab.alpha } else { None },
        expect_beta: if phi_positive_on_t_beta { ab.beta } else { None },
    }
}

/// Render `±∞`-aware bounds.
pub fn fmt_bound(b: &Option<Rational>, plus: bool) -> String {
    match b {
        Some(r) => fmt_rat(r),
        None if plus => "+inf".into(),
        None => "-inf".into(),
    }
}

impl AlphaBeta {
    pub fn is_trivial(&self) -> bool {
        self.alpha.is_none() && self.beta.is_none()
    }

    /// Whether `β < 0 < α` for the finite ends.
    pub fn signs_ok(&self) -> bool {
        self.alpha.as_ref().is_none_or(|a| a.is_positive()) && self.beta.as_ref().is_none_or(|b| b.is_negative())
    }
}

/// Helper for the zero polynomial check on optional counts.
pub fn count_is_zero(s: &Stratum) -> bool {
    s.count.as_ref().is_some_and(|c| c.is_zero() || c.terms().all(|(_, k)| k.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::{int, rat};

    fn critical1() -> ResolutionDatum {
        ResolutionDatum {
            n: 2,
            components: vec![
                Component::new("E1", 2, 2, 2, true),
                Component::new("F1", 1, 0, 1, false),
                Component::new("F2", 1, 0, 1, false),
                Component::new("G1", 0, 2, 1, false),
            ],
            strata: vec![],
            adapted: true,
        }
    }

    #[test]
    fn validation() {
        let mut d = ResolutionDatum { n: 2, components: vec![Component::new("E1", 2, 4, 2, true)], strata: vec![Stratum::new(["E1"])], adapted: true };
        assert!(validate_datum(&d).is_empty());
        d.strata.push(Stratum::new(["E9"]));
        assert_eq!(validate_datum(&d), vec![Diagnostic::UnknownComponent { stratum: 1, id: "E9".into() }]);
        let d = ResolutionDatum {
            n: 2,
            components: vec![Component::new("A", 1, 0, 1, false), Component::new("B", 0, 2, 1, false)],
            strata: vec![Stratum::new(["A", "B"])],
            adapted: true,
        };
        assert_eq!(validate_datum(&d), vec![Diagnostic::NotAdapted { stratum: 0 }]);
    }

    #[test]
    fn alpha_beta_examples() {
        let ab = alpha_beta(&critical1());
        assert_eq!((ab.alpha, ab.beta), (Some(rat(1, 2)), Some(int(-1))));
        let mut d4 = ResolutionDatum {
            n: 2,
            components: vec![
                Component::new("E1", 2, 2, 2, true),
                Component::new("E2", 4, 2, 3, true),
                Component::new("E3", 2, 4, 3, true),
                Component::new("F", 1, 0, 1, false),
                Component::new("G", 0, 1, 1, false),
            ],
            strata: vec![],
            adapted: true,
        };
        d4.components[3].has_k_points = false;
        d4.components[4].has_k_points = false;
        let ab = alpha_beta(&d4);
        assert_eq!((ab.alpha, ab.beta), (Some(rat(3, 2)), Some(rat(-3, 2))));
        let d1 = ResolutionDatum { n: 2, components: vec![Component::new("E1", 4, 4, 2, true)], strata: vec![], adapted: true };
        assert!(alpha_beta(&d1).is_trivial());
    }

    #[test]
    fn padic_candidates() {
        let d = ResolutionDatum {
            n: 2,
            components: vec![
                Component::new("F", 1, 0, 1, false),
                Component::new("E2", 1, 0, 3, true),
                Component::new("E3", 2, 0, 5, true),
                Component::new("G", 0, 2, 1, false),
            ],
            strata: vec![],
            adapted: true,
        };
        let c = candidate_poles_padic(&d);
        let neg: Vec<(Rational, Vec<u32>)> = c.iter().filter(|p| p.real_part.is_negative()).map(|p| (p.real_part.clone(), p.chi_orders())).collect();
        assert!(neg.contains(&(int(-1), vec![1])));
        assert!(neg.contains(&(int(-3), vec![1])));
        assert!(neg.contains(&(rat(-5, 2), vec![1, 2])));
        let single = ResolutionDatum { n: 2, components: vec![Component::new("G", 0, 2, 1, false)], strata: vec![], adapted: true };
        let c = candidate_poles_padic(&single);
        assert_eq!((c[0].real_part.clone(), c[0].chi_orders()), (rat(1, 2), vec![1, 2]));
    }

    #[test]
    fn arch_candidates() {
        let d = ResolutionDatum { n: 2, components: vec![Component::new("E", 2, 0, 3, true)], strata: vec![], adapted: true };
        let r = candidate_poles_arch(&d, FieldKind::Real, 0);
        assert_eq!(r[0].arch, Some(Progression { start: rat(-3, 2), step: rat(-1, 2) }));
        let c = candidate_poles_arch(&d, FieldKind::Complex, 1);
        assert_eq!(c[0].arch, Some(Progression { start: int(-2), step: rat(-1, 2) }));
        let d = ResolutionDatum { n: 2, components: vec![Component::new("E", 0, 1, 1, true)], strata: vec![], adapted: true };
        let c = candidate_poles_arch(&d, FieldKind::Complex, 0);
        assert_eq!(c[0].arch, Some(Progression { start: int(1), step: int(1) }));
    }

    #[test]
    fn expectations() {
        let e = extremal_pole_expectation(&critical1(), true, true);
        assert_eq!((e.expect_alpha, e.expect_beta), (Some(rat(1, 2)), Some(int(-1))));
        let d1 = ResolutionDatum { n: 2, components: vec![Component::new("E1", 4, 4, 2, true)], strata: vec![], adapted: true };
        assert!(extremal_pole_expectation(&d1, true, true).expects_no_poles());
    }

    #[test]
    fn swap_duality() {
        let d = critical1();
        let a = alpha_beta(&d);
        let b = alpha_beta(&d.swapped());
        assert_eq!(b.alpha, a.beta.map(|x| -x));
        assert_eq!(b.beta, a.alpha.map(|x| -x));
    }
}
