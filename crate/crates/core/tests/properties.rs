mod common;

use common::{arb_datum, blow_up, lemma_agrees, worked};
use igusa::cli::{pair_extraction, parse_pair, CountMode};
use igusa::exactalg::scalar::int;
use igusa::padicnum::{oscillatory_eval, CertifiedComplex, Domain, OscOptions, ZValue};
use igusa::resolution::{alpha_beta, candidate_poles_padic};
use igusa::zeta::{denef_zeta, motivic_specialize, motivic_specialize_with, motivic_zeta, topological_zeta};
use igusa::ZetaRat;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 120, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn swap_inverts_s(d in arb_datum()) {
        let z = denef_zeta(&d).unwrap();
        let w = denef_zeta(&d.swapped()).unwrap();
        prop_assert!(w.equals(&z.invert_t()));
    }

    #[test]
    fn swap_exchanges_alpha_and_beta(d in arb_datum()) {
        let a = alpha_beta(&d);
        let b = alpha_beta(&d.swapped());
        prop_assert_eq!(b.alpha, a.beta.map(|x| -x));
        prop_assert_eq!(b.beta, a.alpha.map(|x| -x));
        prop_assert_eq!(b.t_alpha, a.t_beta);
    }

    #[test]
    fn blow_up_keeps_all_three_zetas(d in arb_datum(), pick in 0usize..6) {
        let choices: Vec<usize> = (0..d.strata.len()).filter(|&i| !d.strata[i].ids.is_empty()).collect();
        let e = blow_up(&d, choices[pick % choices.len()]);
        prop_assert!(topological_zeta(&e).unwrap().equals(&topological_zeta(&d).unwrap()));
        prop_assert!(denef_zeta(&e).unwrap().equals(&denef_zeta(&d).unwrap()));
        prop_assert!(motivic_zeta(&e).unwrap().equals(&motivic_zeta(&d).unwrap()));
    }

    #[test]
    fn motivic_specializes_to_denef(d in arb_datum()) {
        let m = motivic_specialize(&motivic_zeta(&d).unwrap()).unwrap();
        prop_assert!(m.equals(&denef_zeta(&d).unwrap().mul(&ZetaRat::monomial(int(1), 2, 0))));
    }

    #[test]
    fn monomial_integral_matches_residue_sums(
        p in prop::sample::select(vec![3u64, 5]),
        a_ord in prop::option::of(0u32..3),
        e in 0u32..=2,
        n_exp in -3i64..=3,
        n in 1u32..=2,
        d in 1u32..=2,
    ) {
        prop_assert!(lemma_agrees(p, a_ord, e, n_exp, n, d).is_ok(), "{:?}", lemma_agrees(p, a_ord, e, n_exp, n, d));
    }

    #[test]
    fn candidates_contain_poles(d in arb_datum()) {
        let c = candidate_poles_padic(&d);
        for pole in denef_zeta(&d).unwrap().poles(None) {
            prop_assert!(c.iter().any(|x| x.real_part == pole.real_part));
        }
    }
}

fn small_poly() -> impl Strategy<Value = String> {
    prop::collection::vec((-2i64..3, 0u32..3, 0u32..3), 1..4).prop_map(|ts| {
        ts.iter().map(|(c, a, b)| format!("({})*x^{}*y^{}", c, a, b)).collect::<Vec<_>>().join("+")
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn doubling_the_budget_nests(f in small_poly(), g in small_poly(), val in -3i64..=1, u in 1i64..3, b in 50u64..2000) {
        let (f, g) = (igusa::cli::expr::parse_poly(&f, &["x", "y"]).unwrap(), igusa::cli::expr::parse_poly(&g, &["x", "y"]).unwrap());
        prop_assume!(!g.is_zero() && !f.is_zero());
        let eval = |budget| match oscillatory_eval(&f, &g, &Domain::Lattice, ZValue::new(val, u), 3, OscOptions { budget }) {
            Ok(c) => c,
            Err(igusa::Error::BudgetExceeded { partial: Some(c), .. }) => c,
            Err(e) => panic!("{}", e),
        };
        let (a, c): (CertifiedComplex, CertifiedComplex) = (eval(b), eval(2 * b));
        prop_assert!(a.contains(c.value(), 0.0), "{:?} left {:?}", c, a);
        prop_assert!(c.nested_in(&a, 1e-14), "{:?} not inside {:?}", c, a);
    }
}

#[test]
fn worked_examples_specialize() {
    for w in worked() {
        let pair = parse_pair(w.f, w.g, &w.region).unwrap();
        let e = pair_extraction(&pair, CountMode::Symbolic(w.class)).unwrap();
        let d = &e.datum;
        let m = motivic_specialize_with(&motivic_zeta(d).unwrap(), &e.symbol_counts()).unwrap();
        assert!(m.equals(&denef_zeta(d).unwrap().mul(&ZetaRat::monomial(int(1), 2, 0))), "{}", w.name);
    }
}
