use proptest::prelude::*;

use heckeklr::diagramkit::{d_w, enumerate_basis, grading, registry, Diagram, Event, Family};
use heckeklr::paramkit::{count_intersections, geometry_events, seq_swap, unsteady, Loading, ParamGraph, SweepOpts};
use heckeklr::ringkit::Perm;
use heckeklr::{Rational, Scalar, F7};

fn r(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn loading(xs: &[i64]) -> Loading {
    Loading::new(xs.iter().map(|&x| r(x)).collect(), None).unwrap()
}

#[test]
fn spectrum_graphs() {
    let g = ParamGraph::new(F7::from_i64(2), vec![F7::from_i64(1), F7::from_i64(2), F7::from_i64(4)]).unwrap();
    assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 0)]);
    assert_eq!(g.order(), Some(3));
    let g = ParamGraph::new(r(2), vec![r(1), r(3)]).unwrap();
    assert!(g.edges().is_empty());
    assert_eq!(g.order(), None);
    assert!(ParamGraph::new(r(1), vec![r(1)]).is_err());
    assert!(ParamGraph::new(r(2), vec![r(1), r(1)]).is_err());
}

#[test]
fn label_swaps() {
    assert_eq!(seq_swap(&[1, 2, 4], 0).unwrap(), vec![2, 1, 4]);
    assert_eq!(seq_swap(&[7, 7, 3], 0).unwrap(), vec![7, 7, 3]);
    assert!(seq_swap(&[1, 2], 1).is_err());
}

#[test]
fn reduced_diagrams() {
    let l = loading(&[0, 5]);
    let id = d_w(Family::HeckeOMinus, &Perm::identity(2), &l, &l, None, &[]).unwrap();
    assert!(id.events.is_empty());
    let s = d_w(Family::HeckeOMinus, &Perm::simple(2, 0), &l, &l, None, &[]).unwrap();
    assert_eq!(s.events, vec![Event::SS(0)]);
    let k = r(-1);
    let w = d_w(Family::Waha, &Perm::simple(2, 0), &l, &l, Some(&k), &[]).unwrap();
    let kinds: Vec<&str> = w
        .events
        .iter()
        .map(|e| match e {
            Event::SG { .. } => "SG",
            Event::SS(_) => "SS",
            _ => "other",
        })
        .collect();
    assert_eq!(kinds, ["SG", "SS", "SG"]);
}

#[test]
fn basis_sizes() {
    let count = |n: usize, e: i16| {
        let l = Loading::evenly_spaced(n, &r(2), None);
        enumerate_basis(Family::Waha, &l, &l, e, Some(&r(-1)), &[]).unwrap().len()
    };
    assert_eq!(count(1, 1), 3);
    assert_eq!(count(2, 0), 2);
    assert_eq!(count(2, 1), 18);
}

#[test]
fn registry_sizes() {
    assert_eq!(registry::<Rational>(Family::HeckeOPlus).len(), 3);
    assert_eq!(registry::<Rational>(Family::Waha).len(), 6);
    assert_eq!(registry::<Rational>(Family::TLambda).len(), registry::<Rational>(Family::Klr).len() + 4);
}

#[test]
fn klr_degrees() {
    let g = ParamGraph::new(r(-1), vec![r(1), r(-1)]).unwrap();
    let l = |u: Vec<usize>| Loading::new(vec![r(0), r(1)], Some(u)).unwrap();
    let dot = Diagram::from_word(Family::Klr, l(vec![0, 1]), vec![Event::Dot(0)]).unwrap();
    assert_eq!(grading(&dot, &g, &[]).unwrap(), 2);
    let same = Diagram::from_word(Family::Klr, l(vec![0, 0]), vec![Event::SS(0)]).unwrap();
    assert_eq!(grading(&same, &g, &[]).unwrap(), -2);
    let pair = Diagram::from_word(Family::Klr, l(vec![0, 1]), vec![Event::SS(0)]).unwrap();
    assert_eq!(grading(&pair, &g, &[]).unwrap(), 2);
}

#[test]
fn composition_boundaries() {
    let a = Diagram::from_word(Family::HeckeOMinus, loading(&[0, 1]), vec![Event::SS(0)]).unwrap();
    let id = Diagram::identity(Family::HeckeOMinus, loading(&[0, 1]));
    assert_eq!(id.compose(&a).unwrap().unwrap(), a);
    assert_eq!(a.compose(&a).unwrap().unwrap().events.len(), 2);
    let other = Diagram::identity(Family::HeckeOMinus, loading(&[0, 2]));
    assert!(other.compose(&a).unwrap().is_none());
    let klr = Diagram::identity(Family::Klr, Loading::new(vec![r(0), r(1)], Some(vec![0, 0])).unwrap());
    assert!(klr.compose(&a).is_err());
}

fn distinct(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(-20i64..20, len).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn unsteady_is_translation_invariant(xs in distinct(3), reds in distinct(2), k in 1i64..4, t in -10i64..10) {
        let pos: Vec<Rational> = xs.iter().map(|&x| r(x)).collect();
        let red: Vec<Rational> = reds.iter().map(|&x| r(x)).collect();
        let shift = |v: &[Rational]| v.iter().map(|x| x.add_ref(&r(t))).collect::<Vec<_>>();
        let kappa = Rational::new(k, 2);
        prop_assert_eq!(unsteady(&pos, &red, &kappa), unsteady(&shift(&pos), &shift(&red), &kappa));
    }

    #[test]
    fn far_right_strand_keeps_steadiness(xs in distinct(3), reds in distinct(2), k in 1i64..4) {
        let mut pos: Vec<Rational> = xs.iter().map(|&x| r(x)).collect();
        let red: Vec<Rational> = reds.iter().map(|&x| r(x)).collect();
        let kappa = Rational::new(k, 2);
        if !unsteady(&pos, &red, &kappa) {
            let far = pos.iter().chain(&red).max().unwrap().add_ref(&r(10));
            pos.push(far);
            prop_assert!(!unsteady(&pos, &red, &kappa));
        }
    }

    #[test]
    fn sweep_matches_pairwise_count(xs in distinct(3), perm in prop::sample::select(Perm::all(3)), k in -3i64..=3, red in -20i64..20) {
        let bottom = loading(&xs);
        let kappa = if k == 0 { None } else { Some(Rational::new(2 * k + 1, 3)) };
        let opts = SweepOpts { kappa, reds: vec![Rational::new(2 * red + 1, 2)] };
        if let Ok(ev) = geometry_events(&bottom, &bottom, &perm, &opts) {
            let f0 = bottom.positions().to_vec();
            let f1: Vec<Rational> = (0..3).map(|i| bottom.positions()[perm.apply(i)].clone()).collect();
            prop_assert_eq!(ev.len(), count_intersections(&f0, &f1, &opts));
        }
    }

    #[test]
    fn composition_is_associative(a in prop::collection::vec(0usize..2, 0..4),
                                  b in prop::collection::vec(0usize..2, 0..4),
                                  c in prop::collection::vec(0usize..2, 0..4)) {
        let d = |w: Vec<usize>| Diagram::from_word(Family::HeckeOMinus, loading(&[0, 1, 2]), w.into_iter().map(Event::SS).collect()).unwrap();
        let (a, b, c) = (d(a), d(b), d(c));
        let left = a.compose(&b).unwrap().unwrap().compose(&c).unwrap().unwrap();
        let right = a.compose(&b.compose(&c).unwrap().unwrap()).unwrap().unwrap();
        prop_assert_eq!(left, right);
    }
}
