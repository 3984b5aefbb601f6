//! Straight-line diagrams `D_w` and the spanning set `e_B D_w X^a`.

use crate::paramkit::Loading;
use crate::ringkit::Perm;
use crate::scalar::{Rational, Scalar};

use super::{DiagError, Diagram, Event, Family, Keyframes};

/// Midpoint offsets tried in turn when the straight interpolation is not generic.
fn perturbation(m: usize) -> Rational {
    if m == 0 {
        Rational::from_i64(0)
    } else {
        Rational::new(1, 7 * 10i64.pow(m as u32))
    }
}

/// Straight strands from `bottom` to `top`, strand `i` ending at index `w(i)`.
///
/// If three lines meet, the midpoint of strand `k` is pushed right by `k²·ε` for a
/// fixed schedule of `ε`. The result never crosses a pair of strands twice.
pub fn d_w(
    family: Family,
    w: &Perm,
    bottom: &Loading,
    top: &Loading,
    kappa: Option<&Rational>,
    reds: &[Rational],
) -> Result<Diagram, DiagError> {
    let n = bottom.len();
    if top.len() != n || w.n() != n {
        return Err(DiagError::Malformed("strand counts differ".into()));
    }
    if let (Some(bl), Some(tl)) = (bottom.labels(), top.labels()) {
        if (0..n).any(|i| tl[w.apply(i)] != bl[i]) {
            return Err(DiagError::Malformed("top labels are not the permuted bottom labels".into()));
        }
    }
    let f0: Vec<Rational> = bottom.positions().to_vec();
    let f2: Vec<Rational> = (0..n).map(|i| top.positions()[w.apply(i)].clone()).collect();
    let two = Rational::from_i64(2);
    for m in 0..8 {
        let eps = perturbation(m);
        let mid: Vec<Rational> = (0..n)
            .map(|k| {
                f0[k].add_ref(&f2[k]).div_ref(&two).unwrap().add_ref(&eps.mul_ref(&Rational::from_i64((k * k) as i64)))
            })
            .collect();
        let mut kf = Keyframes::new(family, vec![f0.clone(), mid, f2.clone()]).kappa(kappa.cloned()).reds(reds.to_vec());
        if let Some(bl) = bottom.labels() {
            kf = kf.labels(bl.to_vec());
        }
        match kf.build() {
            Ok(d) => {
                let crossings = d.events.iter().filter(|e| matches!(e, Event::SS(_))).count();
                if crossings == w.length() {
                    return Ok(d);
                }
            }
            Err(DiagError::Param(crate::paramkit::ParamError::Tangency { .. })) => {}
            Err(e) => return Err(e),
        }
    }
    Err(DiagError::NoPerturbation(w.to_string()))
}

#[derive(Clone, Debug)]
pub struct BasisElem {
    pub w: Perm,
    pub exps: Vec<i16>,
    pub diagram: Diagram,
}

/// `e_B D_w X^a` (Hecke side, `a ∈ [−e, e]^n`) or `e_B D_w y^a` (KLR side,
/// `a ∈ [0, e]^n`), over all `w` compatible with the boundary labels. The
/// polynomial sits at the bottom.
pub fn enumerate_basis(
    family: Family,
    bottom: &Loading,
    top: &Loading,
    expbox: i16,
    kappa: Option<&Rational>,
    reds: &[Rational],
) -> Result<Vec<BasisElem>, DiagError> {
    let n = bottom.len();
    let lo = if family.is_klr() { 0 } else { -expbox };
    let mut exps_all: Vec<Vec<i16>> = vec![Vec::new()];
    for _ in 0..n {
        exps_all = exps_all.into_iter().flat_map(|v| (lo..=expbox).map(move |e| [v.clone(), vec![e]].concat())).collect();
    }
    let mut out = Vec::new();
    for w in Perm::all(n) {
        let d = match d_w(family, &w, bottom, top, kappa, reds) {
            Ok(d) => d,
            Err(DiagError::Malformed(_)) if bottom.labels().is_some() => continue,
            Err(e) => return Err(e),
        };
        for a in &exps_all {
            let mut events = Vec::new();
            for (i, &e) in a.iter().enumerate() {
                for _ in 0..e.unsigned_abs() {
                    events.push(if family.is_klr() { Event::Dot(i) } else { Event::Sq(i, e.signum() as i8) });
                }
            }
            events.extend(d.events.iter().cloned());
            out.push(BasisElem { w: w.clone(), exps: a.clone(), diagram: Diagram { events, ..d.clone() } });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn straight_lines_and_perturbation() {
        let l = Loading::new(vec![r(0, 1), r(1, 1), r(2, 1)], None).unwrap();
        let w0 = Perm::from_vec(vec![2, 1, 0]).unwrap();
        // the straight interpolation has a triple point at x = 1
        let d = d_w(Family::HeckeOMinus, &w0, &l, &l, None, &[]).unwrap();
        assert_eq!(d.events.len(), 3);
        let k = r(-1, 2);
        let d = d_w(Family::Waha, &Perm::simple(2, 0), &Loading::new(vec![r(0, 1), r(1, 1)], None).unwrap(),
            &Loading::new(vec![r(0, 1), r(1, 1)], None).unwrap(), Some(&k), &[]).unwrap();
        assert_eq!(d.events.len(), 3);
    }

    #[test]
    fn basis_count_two_strands() {
        let l = Loading::new(vec![r(0, 1), r(1, 1)], None).unwrap();
        let k = r(-1, 2);
        let b = enumerate_basis(Family::Waha, &l, &l, 1, Some(&k), &[]).unwrap();
        assert_eq!(b.len(), 18);
    }
}
