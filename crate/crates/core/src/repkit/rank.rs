//! Linear independence of basis diagrams, via the rank of their probe evaluations.

use std::collections::BTreeMap;

use crate::diagramkit::{enumerate_basis, Family};
use crate::paramkit::{Loading, Params};
use crate::ringkit::{Mono, XMono};
use crate::scalar::{Rational, Scalar};

use super::check::hecke_probes;
use super::{HeckeRep, Rep, RepError};

/// Rank over the field of a list of sparse rows.
pub fn rank_of_rows<S: Scalar, K: Ord + Clone>(rows: &[BTreeMap<K, S>]) -> usize {
    let mut pivots: Vec<(K, BTreeMap<K, S>)> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for (k, p) in &pivots {
            if let Some(c) = r.get(k).cloned() {
                for (kk, v) in p {
                    let nv = r.get(kk).cloned().unwrap_or_else(S::zero).sub_ref(&c.mul_ref(v));
                    if nv.is_zero() {
                        r.remove(kk);
                    } else {
                        r.insert(kk.clone(), nv);
                    }
                }
            }
        }
        if let Some((k, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            let ci = c.inv().expect("nonzero pivot");
            let normalized: BTreeMap<K, S> = r.into_iter().map(|(kk, v)| (kk, v.mul_ref(&ci))).collect();
            // keep pivot rows reduced against the new pivot
            for (_, p) in pivots.iter_mut() {
                if let Some(c) = p.get(&k).cloned() {
                    for (kk, v) in &normalized {
                        let nv = p.get(kk).cloned().unwrap_or_else(S::zero).sub_ref(&c.mul_ref(v));
                        if nv.is_zero() {
                            p.remove(kk);
                        } else {
                            p.insert(kk.clone(), nv);
                        }
                    }
                }
            }
            pivots.push((k, normalized));
        }
    }
    pivots.len()
}

/// `(rank, count)` for the weighted-Hecke basis `e_B D_w X^a`, `|a_i| ≤ expbox`, on
/// evenly spaced strands (spacing `2|κ|`), evaluated on probes `X^b`, `|b_i| ≤ 2`.
pub fn basis_rank<S: Scalar>(params: &Params<S>, expbox: i16) -> Result<(usize, usize), RepError> {
    let kappa = params.kappa.as_ref().map(|k| k.kappa().clone()).unwrap_or_else(|| Rational::from_i64(-1));
    let p = params.clone().with_kappa(kappa.clone())?;
    let gap = kappa.abs().mul_ref(&Rational::from_i64(2));
    let l = Loading::evenly_spaced(p.n, &gap, None);
    let basis = enumerate_basis(Family::Waha, &l, &l, expbox, Some(&kappa), &[])?;
    let rep = HeckeRep::new(Family::Waha, &p)?;
    let probes = hecke_probes::<S>(p.ctx()?, 2);
    let mut rows = Vec::new();
    for b in &basis {
        let mut row: BTreeMap<(usize, XMono, Mono), S> = BTreeMap::new();
        for (k, f) in probes.iter().enumerate() {
            let g = rep.apply(&b.diagram, f)?;
            for (xm, c) in g.terms() {
                for (m, s) in c.terms() {
                    row.insert((k, *xm, *m), s.clone());
                }
            }
        }
        rows.push(row);
    }
    Ok((rank_of_rows(&rows), basis.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;

    type F = Fp<7>;

    #[test]
    fn small_ranks() {
        let row = |v: &[i64]| -> BTreeMap<usize, F> {
            v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, F::from_i64(*x))).collect()
        };
        assert_eq!(rank_of_rows(&[row(&[1, 2]), row(&[2, 4])]), 1);
        assert_eq!(rank_of_rows(&[row(&[1, 2, 0]), row(&[0, 1, 1]), row(&[1, 3, 1])]), 2);
        assert_eq!(rank_of_rows(&[row(&[0, 1]), row(&[1, 0])]), 2);
    }
}
