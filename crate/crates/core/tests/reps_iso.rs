use proptest::prelude::*;

use heckeklr::diagramkit::Family;
use heckeklr::isokit::*;
use heckeklr::paramkit::{Params, RawConfig};
use heckeklr::repkit::{HeckeRep, KlrRep, Rep, RepError};
use heckeklr::ringkit::{Mono, TruncSeries, XMono, XPoly};
use heckeklr::{Rational, Scalar};

fn params(js: &str) -> Params<Rational> {
    RawConfig::from_json_str(js).unwrap().resolve::<Rational>().unwrap()
}

fn type_o() -> Params<Rational> {
    params(r#"{"field":"Q","q":2,"U":[1,2,4],"n":3,"order":4}"#)
}

fn minus_rep() -> HeckeRep<Rational> {
    HeckeRep::new(Family::HeckeOMinus, &type_o()).unwrap()
}

fn xpoly() -> impl Strategy<Value = XPoly<Rational>> {
    prop::collection::vec((prop::collection::vec(-2i16..=2, 3), -3i64..=3), 0..5).prop_map(|terms| {
        let c = minus_rep().ctx();
        terms.into_iter().fold(XPoly::zero(c), |acc, (e, k)| {
            &acc + &XPoly::from_mono(c, XMono::from_exps(&e)).scale_scalar(&Rational::from_i64(k))
        })
    })
}

#[test]
fn minus_rep_examples() {
    let rep = minus_rep();
    let c = rep.ctx();
    assert!(rep.crossing(0, &XPoly::one(c)).is_zero());
    let x1 = XPoly::x(c, 0);
    let expect = &x1 - &XPoly::x(c, 1).scale_scalar(&Rational::from_i64(2));
    assert_eq!(rep.crossing(0, &x1), expect);
}

#[test]
fn klr_equal_labels_square_to_zero() {
    let rep = KlrRep::new(Family::Klr, &type_o()).unwrap();
    let c = rep.ctx();
    let f = TruncSeries::from_terms(
        c,
        c.cutoff(),
        [(Mono::from_exps(&[2, 0, 1, 0, 0, 0, 0]), Rational::from_i64(3)), (Mono::from_exps(&[0, 1, 0, 0, 0, 0, 0]), Rational::from_i64(-1))],
    );
    let mut u = vec![0, 0, 1];
    let once = rep.crossing(0, &mut u, &f).unwrap();
    assert!(!once.is_zero());
    assert!(rep.crossing(0, &mut u, &once).unwrap().is_zero());
    assert!(rep.crossing(0, &mut u, &TruncSeries::one(c)).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn minus_rep_relations(f in xpoly(), g in xpoly()) {
        let rep = minus_rep();
        let q1 = TruncSeries::from_i64(rep.ctx(), 3);
        for r in 0..2 {
            prop_assert_eq!(rep.crossing(r, &(&f + &g)), &rep.crossing(r, &f) + &rep.crossing(r, &g));
            let t = rep.crossing(r, &f);
            prop_assert_eq!(rep.crossing(r, &t), t.scale(&q1));
        }
        let t = |r: usize, v: &XPoly<Rational>| &rep.crossing(r, v) - v;
        let a = t(0, &t(1, &t(0, &f)));
        let b = t(1, &t(0, &t(1, &f)));
        prop_assert_eq!(a, b);
    }
}

fn iso(kind: IsoType, js: &str) -> IsoConfig<Rational> {
    IsoConfig::new(kind, &params(js)).unwrap()
}

const SMALL_O: &str = r#"{"field":"Q","q":2,"U":[1,2,4],"n":2,"order":4}"#;

#[test]
fn perturbed_checker_fails() {
    let cfg = iso(IsoType::O, SMALL_O);
    let gens = default_generators(&cfg);
    assert!(check_intertwine(&cfg, &gens, &IsoOpts::default()).unwrap().all_pass());
    let bad = check_intertwine(&cfg, &gens, &IsoOpts { perturb: true, ..IsoOpts::default() }).unwrap();
    assert!(!bad.failures().is_empty());
}

#[test]
fn wrong_graph_orientation_fails() {
    let mut cfg = iso(IsoType::O, SMALL_O);
    cfg.klr.graph = cfg.hecke.graph.clone();
    let r = check_intertwine(&cfg, &default_generators(&cfg), &IsoOpts::default());
    assert!(r.map_or(true, |r| !r.all_pass()));
}

#[test]
fn a_coefficients_are_units() {
    let cfg = iso(IsoType::O, SMALL_O);
    let ev = Evaluator::new(&cfg).unwrap();
    for u in cfg.components() {
        let a = a_coeff(&cfg, &ev, 0, &u).unwrap();
        assert!(a.is_unit(), "{}", a.to_json());
        if u[0] == u[1] {
            assert_eq!(a.case, ACase::Equal);
        }
    }
}

#[test]
fn cyclotomic_sign_matters() {
    let js = |s: i64| format!(r#"{{"field":"Q","q":2,"U":[1,2,4],"n":2,"order":3,"sigma":{s},"reds":[{{"theta":0,"Q":1}}]}}"#);
    let (unit, rep) = cyclo_correspondence(&iso(IsoType::F, &js(1)), &[0], &[0, 1]).unwrap();
    assert!(rep.pass());
    assert!(unit.is_unit());
    assert!(matches!(cyclo_correspondence(&iso(IsoType::F, &js(-1)), &[0], &[0, 1]), Err(IsoError::NotDivisible(_))));
}

#[test]
fn violating_generator_needs_reds() {
    let cfg = iso(IsoType::O, SMALL_O);
    assert!(violating_generator_check(&cfg).is_err());
}

#[test]
fn trivial_symmetrizer_and_single_strand_idempotent() {
    let p = params(r#"{"field":"Q","q":3,"U":[1],"n":3,"order":4}"#);
    for sign in [SymSign::Plus, SymSign::Minus] {
        let s = symmetrizer(&p, &[1, 1, 1], sign).unwrap();
        for c in s.check().unwrap() {
            assert!(c.pass, "{}", c.to_json());
        }
    }
    for c in nilhecke_idem(1).unwrap().check::<Rational>().unwrap() {
        assert!(c.pass, "{}", c.to_json());
    }
}

#[test]
fn rep_rejects_foreign_family() {
    assert!(matches!(HeckeRep::new(Family::Klr, &type_o()), Err(RepError::WrongFamily(..))));
}
