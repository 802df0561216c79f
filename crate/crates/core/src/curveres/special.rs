//! Special points and values of `ρ = (f/g)∘σ` on the exceptional locus.

use super::extract::node_over_region;
use super::{BlowupTree, Fresh};
use crate::exactalg::bivariate::{self, restrict};
use crate::exactalg::scalar::{fmt_rat, Rational};
use crate::exactalg::upoly::UPoly;
use crate::{Error, MultiPoly};
use num_traits::{One, Zero};
use std::collections::BTreeSet;

#[derive(Clone, Debug, Default)]
pub struct SpecialValues {
    pub values: BTreeSet<Rational>,
    /// Critical values of `f/g` on the root chart, away from the exceptional
    /// locus. Reported, not included in `values`.
    pub classical: BTreeSet<Rational>,
    pub warnings: Vec<String>,
}

/// `ρ` restricted to an exceptional curve with `N = 0`, as `A/B` with
/// polynomial `A`, `B` in the curve coordinate.
fn restricted_ratio(tree: &BlowupTree, visible: &[(usize, UPoly<Rational>)]) -> (UPoly<Rational>, UPoly<Rational>) {
    let mut a = UPoly::constant(&tree.c_f / &tree.c_g);
    let mut b = UPoly::constant(Rational::one());
    for (c, r) in visible {
        let n = tree.registry[*c].n();
        if n > 0 {
            a = a.mul(&r.pow(n as u32));
        } else if n < 0 {
            b = b.mul(&r.pow((-n) as u32));
        }
    }
    (a, b)
}

fn add_point(out: &mut SpecialValues, a: &UPoly<Rational>, b: &UPoly<Rational>, t: &Rational) {
    let bv = b.eval(t);
    if !bv.is_zero() {
        out.values.insert(a.eval(t) / bv);
    }
}

/// Special values over the region, for the reduction at `p` (used only to
/// decide which exceptional curves lie over a polydisc).
pub fn special_values(tree: &BlowupTree, p: u64) -> Result<SpecialValues, Error> {
    let mut out = SpecialValues::default();
    for (ni, n) in tree.nodes.iter().enumerate() {
        let Some(e) = n.exceptional else { continue };
        if tree.registry[e].n() != 0 || !node_over_region(tree, ni, p)? {
            continue;
        }
        // restriction of every other visible equation to E
        let (fixed_var, free_var) = match n.fresh {
            Fresh::Line => (0, 1),
            _ => (1, 0),
        };
        let _ = fixed_var;
        let others: Vec<(usize, UPoly<Rational>)> = n
            .visible
            .iter()
            .filter(|v| v.comp != e)
            .map(|v| (v.comp, restrict(&v.h, free_var, &Rational::zero())))
            .collect();
        let (a, b) = restricted_ratio(tree, &others);
        let wr = a.derivative().mul(&b).sub(&a.mul(&b.derivative()));
        let ab = a.mul(&b);
        let zero_n: Vec<&UPoly<Rational>> =
            others.iter().filter(|(c, r)| tree.registry[*c].exceptional && tree.registry[*c].n() == 0 && r.deg() > 0).map(|(_, r)| r).collect();
        match n.fresh {
            Fresh::Line => {
                let blown: Vec<Rational> = n.blown.iter().map(|b| b.1.clone()).collect();
                if wr.is_zero() {
                    out.values.insert(a.lead() / b.lead());
                    continue;
                }
                let crit = wr.div_exact(&wr.gcd(&ab)).unwrap_or(wr.clone());
                for (phi, _) in crit.factor() {
                    if phi.deg() == 0 {
                        continue;
                    }
                    if phi.deg() > 1 {
                        return Err(Error::NonRationalSpecialPoint(format!(
                            "critical points of ρ on {} are roots of {}",
                            tree.registry[e].id,
                            super::upoly_string(&phi, "t")
                        )));
                    }
                    let t0 = -phi.coeff(0) / phi.coeff(1);
                    if !blown.contains(&t0) {
                        add_point(&mut out, &a, &b, &t0);
                    }
                }
                for r in zero_n {
                    for (phi, _) in r.factor() {
                        if phi.deg() > 1 {
                            return Err(Error::NonRationalSpecialPoint(format!(
                                "exceptional curves with N = 0 meet at roots of {}",
                                super::upoly_string(&phi, "t")
                            )));
                        }
                        if phi.deg() == 1 {
                            add_point(&mut out, &a, &b, &(-phi.coeff(0) / phi.coeff(1)));
                        }
                    }
                }
            }
            Fresh::Origin => {
                if n.blown.iter().any(|b| b.0.is_zero() && b.1.is_zero()) {
                    continue;
                }
                let o = Rational::zero();
                if ab.eval(&o).is_zero() {
                    continue;
                }
                if wr.eval(&o).is_zero() || zero_n.iter().any(|r| r.eval(&o).is_zero()) {
                    add_point(&mut out, &a, &b, &o);
                }
            }
            Fresh::Plane => {}
        }
    }
    classical(tree, &mut out);
    Ok(out)
}

fn classical(tree: &BlowupTree, out: &mut SpecialValues) {
    let (f, g) = (&tree.pair.f, &tree.pair.g);
    let eqs: Vec<MultiPoly> = (0..2).map(|i| f.derivative(i).mul(g).sub(&f.mul(&g.derivative(i)))).collect();
    if eqs.iter().all(|e| e.is_zero()) {
        return;
    }
    match bivariate::solve(&eqs) {
        None => {
            let common = bivariate::gcd(&eqs[0], &eqs[1]);
            out.warnings.push(format!("f/g is critical along the curve {} = 0", common));
        }
        Some(sol) => {
            for (x, y) in sol.rational {
                let pt = [x.clone(), y.clone()];
                let (fv, gv) = (f.eval(&pt), g.eval(&pt));
                if !fv.is_zero() && !gv.is_zero() {
                    out.classical.insert(fv / gv);
                }
            }
            for phi in sol.nonrational {
                out.warnings.push(format!("non-rational critical points of f/g with coordinate root of {}", super::upoly_string(&phi, "x")));
            }
        }
    }
    for c in &out.classical {
        out.warnings.push(format!("classical critical value {} of f/g not included", fmt_rat(c)));
    }
}

#[cfg(test)]
mod tests {
    use super::super::{adapted_refine, resolve_embedded, PlaneCurvePair, Region, XY};
    use super::*;
    use crate::cli::expr::parse_poly;
    use crate::exactalg::scalar::int;

    fn values(f: &str, g: &str, region: Region) -> SpecialValues {
        let pair = PlaneCurvePair::new(parse_poly(f, &XY).unwrap(), parse_poly(g, &XY).unwrap(), region).unwrap();
        let tree = adapted_refine(resolve_embedded(&pair).unwrap()).unwrap();
        special_values(&tree, 7).unwrap()
    }

    #[test]
    fn critical_examples() {
        let one: BTreeSet<Rational> = [int(1)].into_iter().collect();
        let v = values("x^2-y^2", "x^2", Region::FullLattice);
        assert_eq!(v.values, one);
        assert!(!v.warnings.is_empty());
        assert_eq!(values("x^2+x^3-y^2", "x^2", Region::origin()).values, one);
        assert!(values("x", "1", Region::FullLattice).values.is_empty());
    }
}
