use proptest::prelude::*;

use heckeklr::ringkit::{Mono, Perm, TruncSeries, UniSeries, VarCtx, XEval, XMono, XPoly};
use heckeklr::{Rational, Scalar, F7};

fn ctx() -> VarCtx {
    // y1, y2, y3, h, z1
    VarCtx::new(3, 1, 5).unwrap()
}

fn series<S: Scalar>() -> impl Strategy<Value = TruncSeries<S>> {
    prop::collection::vec((prop::collection::vec(0u8..3, 5), -4i64..=4), 0..7).prop_map(|terms| {
        let c = ctx();
        TruncSeries::from_terms(c, c.cutoff(), terms.into_iter().map(|(e, k)| (Mono::from_exps(&e), S::from_i64(k))))
    })
}

fn y_series() -> impl Strategy<Value = TruncSeries<Rational>> {
    prop::collection::vec((prop::collection::vec(0u8..3, 3), -4i64..=4), 0..7).prop_map(|terms| {
        let c = ctx();
        TruncSeries::from_terms(c, c.cutoff(), terms.into_iter().map(|(e, k)| (Mono::from_exps(&[e[0], e[1], e[2], 0, 0]), Rational::from_i64(k))))
    })
}

fn xpoly() -> impl Strategy<Value = XPoly<Rational>> {
    prop::collection::vec((prop::collection::vec(-2i16..=2, 3), -3i64..=3), 0..5).prop_map(|terms| {
        let c = ctx();
        terms.into_iter().fold(XPoly::zero(c), |acc, (e, k)| {
            &acc + &XPoly::from_mono(c, XMono::from_exps(&e)).scale_scalar(&Rational::from_i64(k))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_rational(a in series::<Rational>(), b in series::<Rational>(), c in series::<Rational>()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&(&a + &b) - &b).eq_certified(&a));
    }

    #[test]
    fn ring_axioms_f7(a in series::<F7>(), b in series::<F7>(), c in series::<F7>()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn inverse_of_units(a in series::<Rational>(), k in 1i64..5) {
        let u = &a.truncate(a.prec()) + &TruncSeries::from_i64(*a.ctx(), k);
        prop_assume!(u.is_unit());
        let inv = u.invert().unwrap();
        prop_assert!((&u * &inv).eq_certified(&TruncSeries::one(*u.ctx())));
    }

    #[test]
    fn demazure_identities(f in y_series(), g in y_series()) {
        for r in 0..2 {
            prop_assert!(f.demazure(r).unwrap().demazure(r).unwrap().is_zero());
            let lhs = (&f * &g).demazure(r).unwrap();
            let rhs = &(&f.demazure(r).unwrap() * &g) + &(&f.swap_y(r) * &g.demazure(r).unwrap());
            prop_assert!(lhs.eq_certified(&rhs));
            // linearity
            let sum = (&f + &g).demazure(r).unwrap();
            prop_assert!(sum.eq_certified(&(&f.demazure(r).unwrap() + &g.demazure(r).unwrap())));
        }
        let a = f.demazure(0).unwrap().demazure(1).unwrap().demazure(0).unwrap();
        let b = f.demazure(1).unwrap().demazure(0).unwrap().demazure(1).unwrap();
        prop_assert!(a.eq_certified(&b));
    }

    #[test]
    fn exact_division_recovers_factor(f in y_series()) {
        let c = *f.ctx();
        let lin = &TruncSeries::y(c, 1) - &TruncSeries::y(c, 0);
        let q = (&f * &lin).exact_div(&lin).unwrap();
        prop_assert!(q.eq_certified(&f.truncate(c.cutoff() - 1)));
    }

    #[test]
    fn evaluation_is_a_ring_map(f in xpoly(), g in xpoly()) {
        let c = ctx();
        let u = [Rational::from_i64(1), Rational::from_i64(2), Rational::from_i64(-3)];
        for b in [UniSeries::one_plus(), UniSeries::exp(c.cutoff())] {
            let mut ev = XEval::new(c, &u, &b);
            let lhs = ev.eval(&(&f * &g));
            let rhs = &ev.eval(&f) * &ev.eval(&g);
            prop_assert!(lhs.eq_certified(&rhs));
        }
    }

    #[test]
    fn laurent_divided_difference(f in xpoly()) {
        let c = ctx();
        for r in 0..2 {
            let d = f.demazure(r);
            let den = &XPoly::x(c, r + 1) - &XPoly::x(c, r);
            prop_assert_eq!(&d * &den, &f.swap(r) - &f);
        }
    }

    #[test]
    fn permutations(a in prop::sample::select(Perm::all(4)),
                    b in prop::sample::select(Perm::all(4)),
                    c in prop::sample::select(Perm::all(4))) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        let w = a.reduced_word();
        prop_assert_eq!(w.len(), a.length());
        prop_assert_eq!(Perm::from_word(4, &w), a.clone());
        prop_assert_eq!(a.compose(&a.inverse()), Perm::identity(4));
    }
}

#[test]
fn series_examples() {
    let c = VarCtx::new(2, 1, 2).unwrap();
    let y1 = TruncSeries::<Rational>::y(c, 0);
    let one = TruncSeries::one(c);
    assert_eq!(&(&one + &y1) * &(&one - &y1), &one - &(&y1 * &y1));
    assert!(y1.invert().is_err());
    let e = TruncSeries::subst(&UniSeries::exp(2), &y1).unwrap();
    let expect = &(&one + &y1) + &(&y1 * &y1).scale(&Rational::from_frac(1, 2).unwrap());
    assert_eq!(e, expect);
    let c1 = VarCtx::new(2, 1, 1).unwrap();
    assert!((&TruncSeries::<Rational>::h(c1) * &TruncSeries::z(c1, 0)).is_zero());
}
