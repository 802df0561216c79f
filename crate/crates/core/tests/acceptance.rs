//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use common::{arb_datum, blow_up, lemma_agrees, worked, Worked};
use igusa::cli::expr::parse_poly;
use igusa::cli::{pair_extraction, parse_pair, CountMode};
use igusa::curveres::{adapted_refine, n_form, resolve_embedded, PlaneCurvePair, Region, XY};
use igusa::exactalg::scalar::{int, rat, rat_to_f64};
use igusa::padicnum::{
    eta_p, expansion_fit, oscillatory_eval, order_measure_table, psi, zeta_oracle_coeffs, CertifiedComplex, Domain, OscOptions, PredictedTerm, Sample, ZValue,
};
use igusa::resolution::{alpha_beta, candidate_poles_padic, ResolutionDatum};
use igusa::zeta::{denef_zeta, motivic_specialize, motivic_specialize_with, motivic_zeta, topological_zeta};
use igusa::{Error, ZetaRat};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn symbolic(w: &Worked) -> (ResolutionDatum, ZetaRat) {
    let pair = parse_pair(w.f, w.g, &w.region).unwrap();
    let d = pair_extraction(&pair, CountMode::Symbolic(w.class)).unwrap().datum;
    let z = denef_zeta(&d).unwrap();
    (d, z)
}

fn osc(f: &str, g: &str, dom: &Domain, z: ZValue, p: u64) -> Result<CertifiedComplex, Error> {
    oscillatory_eval(&parse_poly(f, &XY).unwrap(), &parse_poly(g, &XY).unwrap(), dom, z, p, OscOptions::default())
}

fn polydisc() -> Domain {
    Domain::Polydisc { center: vec![int(0), int(0)], m: 1 }
}

fn symbolic_reproduction() -> Outcome {
    for w in worked() {
        let (_, z) = symbolic(&w);
        if !z.equals(&w.formula()) {
            return Err(format!("{}: got {}", w.name, z));
        }
    }
    Ok(format!("{} formulas", worked().len()))
}

fn resolution_data() -> Outcome {
    let t = |f: &str, g: &str, r: Region| {
        let pair = PlaneCurvePair::new(parse_poly(f, &XY).unwrap(), parse_poly(g, &XY).unwrap(), r).unwrap();
        n_form(&adapted_refine(resolve_embedded(&pair).unwrap()).unwrap())
    };
    let a = t("x^2-y^2", "x^2", Region::FullLattice);
    let b = t("y^2+x^4", "x^2+y^4", Region::origin());
    if a != vec![(-2, 1), (0, 2), (1, 1), (1, 1)] || b != vec![(-2, 3), (-1, 1), (0, 2), (1, 1), (2, 3)] {
        return Err(format!("{:?} {:?}", a, b));
    }
    Ok(format!("{:?}; {:?}", a, b))
}

fn oracle_agreement() -> Outcome {
    let (ell, budget) = (6, 10_000_000);
    let mut widest = 0.0f64;
    let mut checked = 0;
    for w in worked() {
        let (d, z) = symbolic(&w);
        let ab = alpha_beta(&d);
        let (f, g) = w.polys();
        for p in [3u64, 7] {
            if w.class.is_some_and(|c| p % c.modulus != c.residue) {
                continue;
            }
            let t = order_measure_table(&f, &g, &Domain::from(&w.region), p, ell, budget).map_err(|e| format!("{} p={}: {}", w.name, p, e))?;
            let iv = zeta_oracle_coeffs(&t, -4..=4);
            let exact = z.band_series(ab.beta.as_ref(), ab.alpha.as_ref(), -4, 4, &int(p as i64)).unwrap();
            for (k, (lo, hi)) in &iv {
                let e = exact.get(k).cloned().unwrap_or_default();
                let width = rat_to_f64(&(hi - lo));
                widest = widest.max(width);
                if !(lo <= &e && &e <= hi) || width > 1e-3 {
                    return Err(format!("{} p={} k={}: [{}, {}] vs {}", w.name, p, k, lo, hi, e));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{} (example, p) pairs, widest interval {:.2e}", checked, widest))
}

fn oscillatory_closed_form() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in [3u64, 7] {
        let units: Vec<i64> = (1..).filter(|u| u % p as i64 != 0).take(6).collect();
        for val in [-1i64, -2, -3] {
            for &u in &units {
                let z = ZValue::new(val, u);
                let c = osc("x^2-y^2", "x^2", &Domain::Lattice, z, p).map_err(|e| e.to_string())?;
                let zr = z.to_rational(p);
                let expected = psi(&zr, p) * eta_p(&-zr.clone(), p).to_complex() * (p as f64 / (p as f64 + 1.0)) * (p as f64).powf(val as f64 / 2.0);
                let gap = c.distance(expected) - c.err;
                worst = worst.max(gap);
                if gap > 1e-9 {
                    return Err(format!("p={} z={:?}: {:?} vs {}", p, z, c, expected));
                }
            }
        }
    }
    Ok(format!("36 values, max(|E - closed form| - radius) = {:.2e}", worst))
}

fn expansion_at_infinity() -> Outcome {
    let p = 3;
    let mut samples = Vec::new();
    for val in -7..=-2 {
        for u in [1, 2] {
            let z = ZValue::new(val, u);
            samples.push(Sample::new(z, osc("x^2+x^3-y^2", "x^2", &polydisc(), z, p).map_err(|e| e.to_string())?));
        }
    }
    let terms = [
        PredictedTerm::new(int(1), rat(-5, 2), 1, false),
        PredictedTerm::new(int(1), rat(-5, 2), 1, true),
        PredictedTerm::new(int(1), int(-1), 1, false),
        PredictedTerm::new(int(0), int(-1), 1, false),
    ];
    let r = expansion_fit(&samples, &terms, p, 1).map_err(|e| e.to_string())?;
    let minus_one: Vec<_> = r.terms.iter().filter(|t| t.term.gamma == int(-1)).collect();
    if let Some(t) = minus_one.iter().find(|t| t.abs() > t.err) {
        return Err(format!("|z|^-1 term present: {:?}", t));
    }
    for uclass in [1, 2] {
        let of_class: Vec<_> = r.terms.iter().filter(|t| t.uclass == uclass).collect();
        let top = of_class.iter().max_by(|a, b| a.abs().total_cmp(&b.abs())).unwrap();
        if top.term.c != int(1) || top.term.gamma != rat(-5, 2) || !top.significant() {
            return Err(format!("u = {}: dominant term {:?}", uclass, top));
        }
    }
    let largest = minus_one.iter().map(|t| t.abs()).fold(0.0, f64::max);
    Ok(format!("dominant (1, -5/2); |z|^-1 coefficients at most {:.1e}, each below its error", largest))
}

fn expansion_at_zero() -> Outcome {
    let p = 3u64;
    let mut out = Vec::new();
    for (w, dom) in [(&worked()[5], Domain::Lattice), (&worked()[7], polydisc())] {
        let (d, _) = symbolic(w);
        let alpha = alpha_beta(&d).alpha;
        if alpha != Some(rat(1, 2)) {
            return Err(format!("{}: alpha = {:?}", w.name, alpha));
        }
        let mu = rat_to_f64(&dom.measure(2, p));
        // certified lower and upper bounds of |E − μ| / |z|^{1/2} per level
        let mut ratios = Vec::new();
        for val in 1..=4i64 {
            let mut hi: f64 = 0.0;
            let mut lo: f64 = 0.0;
            for u in [1, 2] {
                let c = osc(w.f, w.g, &dom, ZValue::new(val, u), p).map_err(|e| e.to_string())?;
                let scale = (p as f64).powf(val as f64 / 2.0);
                let gap = c.distance(num_complex::Complex64::new(mu, 0.0));
                hi = hi.max((gap + c.err) * scale);
                lo = lo.max((gap - c.err).max(0.0) * scale);
            }
            ratios.push((lo, hi));
        }
        let bound = ratios[..2].iter().map(|r| r.1).fold(0.0, f64::max);
        if let Some(r) = ratios[2..].iter().find(|r| r.0 > bound) {
            return Err(format!("{}: ratio grows to {:?} beyond {}", w.name, r, bound));
        }
        out.push(format!("{} C = {:.4}", w.name, ratios.iter().map(|r| r.1).fold(0.0, f64::max)));
    }
    Ok(out.join("; "))
}

fn check<T: std::fmt::Debug>(name: &str, r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{}: {}", name, e))
}

fn properties() -> Outcome {
    let cases = 100;
    let q2 = ZetaRat::monomial(int(1), 2, 0);
    check(
        "swap",
        runner(cases).run(&arb_datum(), |d| {
            let z = denef_zeta(&d).unwrap();
            let ab = (alpha_beta(&d), alpha_beta(&d.swapped()));
            assert!(denef_zeta(&d.swapped()).unwrap().equals(&z.invert_t()));
            assert!(ab.1.alpha == ab.0.beta.map(|x| -x) && ab.1.beta == ab.0.alpha.map(|x| -x));
            Ok(())
        }),
    )?;
    check(
        "blow-up",
        runner(cases).run(&(arb_datum(), 0usize..6), |(d, pick)| {
            let choices: Vec<usize> = (0..d.strata.len()).filter(|&i| !d.strata[i].ids.is_empty()).collect();
            let e = blow_up(&d, choices[pick % choices.len()]);
            assert!(topological_zeta(&e).unwrap().equals(&topological_zeta(&d).unwrap()));
            Ok(())
        }),
    )?;
    check(
        "motivic",
        runner(cases).run(&arb_datum(), |d| {
            assert!(motivic_specialize(&motivic_zeta(&d).unwrap()).unwrap().equals(&denef_zeta(&d).unwrap().mul(&q2)));
            Ok(())
        }),
    )?;
    for w in worked() {
        let pair = parse_pair(w.f, w.g, &w.region).unwrap();
        let e = pair_extraction(&pair, CountMode::Symbolic(w.class)).unwrap();
        let m = motivic_specialize_with(&motivic_zeta(&e.datum).unwrap(), &e.symbol_counts()).unwrap();
        if !m.equals(&denef_zeta(&e.datum).unwrap().mul(&q2)) {
            return Err(format!("motivic specialization on {}", w.name));
        }
    }
    let lemma = (proptest::sample::select(vec![3u64, 5]), proptest::option::of(0u32..3), 0u32..=2, -3i64..=3, 1u32..=2, 1u32..=2);
    check(
        "lemma",
        runner(cases).run(&lemma, |(p, a, e, n_exp, n, d)| {
            lemma_agrees(p, a, e, n_exp, n, d).map_err(proptest::test_runner::TestCaseError::fail)
        }),
    )?;
    Ok(format!("{} random instances per property, plus the worked examples", cases))
}

fn candidate_supersets() -> Outcome {
    for w in worked() {
        let (d, z) = symbolic(&w);
        let cands = candidate_poles_padic(&d);
        for pole in z.poles(None) {
            if !cands.iter().any(|c| c.real_part == pole.real_part) {
                return Err(format!("{}: pole {} missing", w.name, pole.real_part));
            }
        }
    }
    let orders = |i: usize, re: igusa::exactalg::scalar::Rational| {
        let (d, _) = symbolic(&worked()[i]);
        candidate_poles_padic(&d).into_iter().filter(|c| c.real_part == re).flat_map(|c| c.chi_orders()).collect::<Vec<_>>()
    };
    for (i, re) in [(5, rat(1, 2)), (6, rat(1, 2)), (6, rat(-1, 2)), (8, rat(-5, 2))] {
        if orders(i, re.clone()) != vec![1, 2] {
            return Err(format!("{}: Re s = {} has chi orders {:?}", worked()[i].name, re, orders(i, re.clone())));
        }
    }
    Ok("all worked examples; chi of order 1 or 2 at Re s = ±1/2 and -5/2".into())
}

fn nesting() -> Outcome {
    let small = proptest::collection::vec((-2i64..3, 0u32..3, 0u32..3), 1..4).prop_map(|ts| {
        ts.iter().map(|(c, a, b)| format!("({})*x^{}*y^{}", c, a, b)).collect::<Vec<_>>().join("+")
    });
    let inst = (small.clone(), small, -3i64..=1, 1i64..3, 50u64..2000);
    let mut r = runner(1);
    let mut done = 0;
    let mut truncated = 0;
    while done < 50 {
        let (f, g, val, u, b) = inst.new_tree(&mut r).unwrap().current();
        let (f, g) = (parse_poly(&f, &XY).unwrap(), parse_poly(&g, &XY).unwrap());
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let eval = |budget| match oscillatory_eval(&f, &g, &Domain::Lattice, ZValue::new(val, u), 3, OscOptions { budget }) {
            Ok(c) => Ok(c),
            Err(Error::BudgetExceeded { partial: Some(c), .. }) => Ok(c),
            Err(e) => Err(e.to_string()),
        };
        let (a, c) = (eval(b)?, eval(2 * b)?);
        if a.err > c.err {
            truncated += 1;
        }
        if !a.contains(c.value(), 0.0) {
            return Err(format!("{} / {} at budget {}: {:?} left {:?}", f, g, b, c, a));
        }
        done += 1;
    }
    Ok(format!("{} instances, {} where doubling shrank the radius", done, truncated))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("symbolic reproduction", symbolic_reproduction),
        ("resolution data", resolution_data),
        ("oracle agreement", oracle_agreement),
        ("oscillatory closed form", oscillatory_closed_form),
        ("expansion at infinity", expansion_at_infinity),
        ("expansion at zero", expansion_at_zero),
        ("properties", properties),
        ("candidate poles", candidate_supersets),
        ("certification nesting", nesting),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = std::time::Instant::now();
        match f() {
            Ok(msg) => println!("criterion {} ({}): PASS  {}  [{:.1?}]", i + 1, name, msg, t.elapsed()),
            Err(msg) => {
                println!("criterion {} ({}): FAIL  {}", i + 1, name, msg);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria {:?}", failed);
        std::process::exit(1);
    }
}
