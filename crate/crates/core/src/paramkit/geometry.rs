//! Crossing events of piecewise-linear strand motions.
//!
//! A motion is a list of keyframes; keyframe `f` gives the x-coordinate of every
//! strand (indexed by a stable strand id) at time `f`, and strands move linearly
//! between consecutive keyframes. Ghosts sit at `x + κ`; red lines are vertical.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::ringkit::Perm;
use crate::scalar::{One, Rational, Scalar, Zero};

use super::{Loading, ParamError};

/// Direction of a strand relative to the ghost or red line it crosses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    LeftToRight,
    RightToLeft,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::LeftToRight => Dir::RightToLeft,
            Dir::RightToLeft => Dir::LeftToRight,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeomKind {
    /// `left` is the strand that was on the left before the crossing.
    StrandStrand { left: usize, right: usize },
    StrandGhost { strand: usize, owner: usize, dir: Dir },
    StrandRed { strand: usize, red: usize, dir: Dir },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomEvent {
    pub t: Rational,
    pub x: Rational,
    pub kind: GeomKind,
}

/// Which crossings are visible in a family.
#[derive(Clone, Debug, Default)]
pub struct SweepOpts {
    pub kappa: Option<Rational>,
    /// Red line positions in increasing order.
    pub reds: Vec<Rational>,
}

fn sign(x: &Rational) -> Ordering {
    x.cmp(&Rational::zero())
}

/// Linear zero of `g` on `[0,1]` given endpoint values of opposite sign.
fn root(g0: &Rational, g1: &Rational) -> Rational {
    g0.div_ref(&g0.sub_ref(g1)).expect("distinct endpoint values")
}

fn lerp(a: &Rational, b: &Rational, s: &Rational) -> Rational {
    a.add_ref(&s.mul_ref(&b.sub_ref(a)))
}

/// All visible crossings, ordered by `(t, x)`.
///
/// Fails with `Tangency` when two events share a point, when a crossing happens
/// exactly at a keyframe, or when two lines overlap along a segment.
pub fn sweep(frames: &[Vec<Rational>], opts: &SweepOpts) -> Result<Vec<GeomEvent>, ParamError> {
    let mut events = Vec::new();
    let n = frames.first().map_or(0, |f| f.len());
    for f in frames {
        if f.len() != n {
            return Err(ParamError::Loading("keyframes disagree on strand count".into()));
        }
    }
    let tangency = |t: Rational, x: Rational| ParamError::Tangency { t: t.to_wire(), x: x.to_wire() };
    for seg in 0..frames.len().saturating_sub(1) {
        let (p0, p1) = (&frames[seg], &frames[seg + 1]);
        let t0 = Rational::from_i64(seg as i64);
        let mut check = |g0: Rational, g1: Rational, pos0: &Rational, pos1: &Rational, kind: &dyn Fn(Ordering) -> GeomKind| {
            match (sign(&g0), sign(&g1)) {
                (Ordering::Equal, _) => Err(tangency(t0.clone(), pos0.clone())),
                (_, Ordering::Equal) => Err(tangency(t0.add_ref(&Rational::one()), pos1.clone())),
                (a, b) if a != b => {
                    let s = root(&g0, &g1);
                    events.push(GeomEvent { t: t0.add_ref(&s), x: lerp(pos0, pos1, &s), kind: kind(a) });
                    Ok(())
                }
                _ => Ok(()),
            }
        };
        for a in 0..n {
            for b in a + 1..n {
                let g0 = p0[a].sub_ref(&p0[b]);
                let g1 = p1[a].sub_ref(&p1[b]);
                check(g0, g1, &p0[a], &p1[a], &|s0| {
                    if s0 == Ordering::Less {
                        GeomKind::StrandStrand { left: a, right: b }
                    } else {
                        GeomKind::StrandStrand { left: b, right: a }
                    }
                })?;
            }
        }
        if let Some(k) = &opts.kappa {
            for a in 0..n {
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    let g0 = p0[a].sub_ref(&p0[b]).sub_ref(k);
                    let g1 = p1[a].sub_ref(&p1[b]).sub_ref(k);
                    check(g0, g1, &p0[a], &p1[a], &|s0| GeomKind::StrandGhost {
                        strand: a,
                        owner: b,
                        dir: if s0 == Ordering::Less { Dir::LeftToRight } else { Dir::RightToLeft },
                    })?;
                }
            }
        }
        for a in 0..n {
            for (j, th) in opts.reds.iter().enumerate() {
                let g0 = p0[a].sub_ref(th);
                let g1 = p1[a].sub_ref(th);
                check(g0, g1, &p0[a], &p1[a], &|s0| GeomKind::StrandRed {
                    strand: a,
                    red: j,
                    dir: if s0 == Ordering::Less { Dir::LeftToRight } else { Dir::RightToLeft },
                })?;
            }
        }
    }
    events.sort_by(|a, b| a.t.cmp(&b.t).then_with(|| a.x.cmp(&b.x)));
    for w in events.windows(2) {
        if w[0].t == w[1].t && w[0].x == w[1].x {
            return Err(tangency(w[0].t.clone(), w[0].x.clone()));
        }
    }
    Ok(events)
}

/// Straight-line interpolation where strand `i` of `bottom` ends at index `w(i)` of `top`.
pub fn geometry_events(
    bottom: &Loading,
    top: &Loading,
    w: &Perm,
    opts: &SweepOpts,
) -> Result<Vec<GeomEvent>, ParamError> {
    if bottom.len() != top.len() || w.n() != bottom.len() {
        return Err(ParamError::Loading("strand counts differ".into()));
    }
    let f0 = bottom.positions().to_vec();
    let f1 = (0..bottom.len()).map(|i| top.positions()[w.apply(i)].clone()).collect();
    sweep(&[f0, f1], opts)
}

/// Pairwise-intersection count used as an independent oracle for [`sweep`] on a
/// single straight segment: inversions of the matching plus ghost and red
/// line intersections.
pub fn count_intersections(f0: &[Rational], f1: &[Rational], opts: &SweepOpts) -> usize {
    let n = f0.len();
    let mut c = 0;
    let crosses = |a0: Rational, a1: Rational| (a0 < Rational::zero()) != (a1 < Rational::zero());
    for a in 0..n {
        for b in 0..n {
            if a < b && (f0[a] < f0[b]) != (f1[a] < f1[b]) {
                c += 1;
            }
            if let Some(k) = &opts.kappa {
                if a != b && crosses(f0[a].sub_ref(&f0[b]).sub_ref(k), f1[a].sub_ref(&f1[b]).sub_ref(k)) {
                    c += 1;
                }
            }
        }
        for th in &opts.reds {
            if crosses(f0[a].sub_ref(th), f1[a].sub_ref(th)) {
                c += 1;
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn identity_has_no_events() {
        let l = Loading::new(vec![r(0, 1), r(1, 1)], None).unwrap();
        let ev = geometry_events(&l, &l, &Perm::identity(2), &SweepOpts::default()).unwrap();
        assert!(ev.is_empty());
    }

    #[test]
    fn swap_with_small_kappa_gives_three_events() {
        let l = Loading::new(vec![r(0, 1), r(1, 1)], None).unwrap();
        let opts = SweepOpts { kappa: Some(r(-1, 2)), reds: vec![] };
        let ev = geometry_events(&l, &l, &Perm::simple(2, 0), &opts).unwrap();
        assert_eq!(ev.len(), 3);
        assert!(matches!(ev[0].kind, GeomKind::StrandGhost { strand: 0, owner: 1, dir: Dir::LeftToRight }));
        assert!(matches!(ev[1].kind, GeomKind::StrandStrand { left: 0, right: 1 }));
        assert!(matches!(ev[2].kind, GeomKind::StrandGhost { strand: 1, owner: 0, dir: Dir::RightToLeft }));
        // with |κ| beyond the separation the ghosts never meet the other strand
        let opts = SweepOpts { kappa: Some(r(-3, 1)), reds: vec![] };
        assert_eq!(geometry_events(&l, &l, &Perm::simple(2, 0), &opts).unwrap().len(), 1);
    }

    #[test]
    fn single_red_crossing() {
        let b = Loading::new(vec![r(0, 1)], None).unwrap();
        let t = Loading::new(vec![r(2, 1)], None).unwrap();
        let opts = SweepOpts { kappa: None, reds: vec![r(1, 1)] };
        let ev = geometry_events(&b, &t, &Perm::identity(1), &opts).unwrap();
        assert_eq!(ev.len(), 1);
        assert!(matches!(ev[0].kind, GeomKind::StrandRed { strand: 0, red: 0, dir: Dir::LeftToRight }));
    }

    #[test]
    fn tangency_detected() {
        // three strands meeting at one point
        let f0 = vec![r(0, 1), r(1, 1), r(2, 1)];
        let f1 = vec![r(2, 1), r(1, 1), r(0, 1)];
        assert!(matches!(sweep(&[f0, f1], &SweepOpts::default()), Err(ParamError::Tangency { .. })));
    }
}
