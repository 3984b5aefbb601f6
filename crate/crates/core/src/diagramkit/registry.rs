//! Defining relations of every family, as concrete diagram identities.
//!
//! Each relation is drawn as a small local picture (keyframes in local
//! coordinates) and embedded into `n` strands with idle spectators far to the
//! left and right. Local pictures without red lines sit around `x = 100`, to the
//! right of every red line; pictures with a red line sit around that line,
//! scaled down so that nothing reaches the neighbouring lines.
//!
//! Pictures involving ghosts are drawn for `κ < 0`. For `κ > 0` they are
//! mirrored, which multiplies every term by `−1` per divided-difference crossing.

use serde_json::{json, Value};

use crate::paramkit::{Params, ParamGraph};
use crate::ringkit::{Mono, TruncSeries, VarCtx};
use crate::scalar::{Rational, Scalar};

use super::{DiagError, DiagExpr, Diagram, Decor, Event, Family, Keyframes};

/// Every strand of a relation picture stays within this distance of its centre.
const BASE: i64 = 100;
const SPECTATOR: i64 = 200;

/// Shared data for building relation instances.
pub struct RelCtx<'a, S: Scalar> {
    pub params: &'a Params<S>,
    pub family: Family,
    pub ctx: VarCtx,
    /// `𝗊 = q·d(h)`.
    pub qq: TruncSeries<S>,
    /// `Q̃_j = Q_j·b(σ z_j)` in red-line order.
    pub qt: Vec<TruncSeries<S>>,
    pub kappa_neg: bool,
    scale: Rational,
}

impl<'a, S: Scalar> RelCtx<'a, S> {
    pub fn new(family: Family, params: &'a Params<S>) -> Result<Self, DiagError> {
        let ctx = params.ctx()?;
        let thetas = params.reds.thetas();
        let limit = Rational::from_i64(BASE - 10);
        if thetas.iter().any(|t| t.abs() >= limit) {
            return Err(DiagError::Malformed(format!("red lines must lie strictly between -{0} and {0}", BASE - 10)));
        }
        let mut scale = Rational::from_i64(1);
        for w in thetas.windows(2) {
            let s = w[1].sub_ref(&w[0]).div_ref(&Rational::from_i64(8)).unwrap();
            if s < scale {
                scale = s;
            }
        }
        let qq = params.qq(ctx);
        let qt = params.q_tilde(ctx);
        let kappa_neg = params.kappa.as_ref().is_none_or(|w| w.is_negative());
        Ok(RelCtx { params, family, ctx, qq, qt, kappa_neg, scale })
    }

    fn graph(&self) -> &ParamGraph<S> {
        &self.params.graph
    }

    fn one(&self) -> TruncSeries<S> {
        TruncSeries::one(self.ctx)
    }

    fn c(&self, k: i64) -> TruncSeries<S> {
        TruncSeries::from_i64(self.ctx, k)
    }

    fn sign(&self) -> TruncSeries<S> {
        self.c(self.params.conv.klr_sign)
    }

    /// `c·h` with `c` the configured KLR `h` coefficient.
    fn ch(&self) -> TruncSeries<S> {
        if self.params.conv.klr_h {
            TruncSeries::h(self.ctx)
        } else {
            TruncSeries::zero(self.ctx)
        }
    }

    fn y(&self, i: usize) -> TruncSeries<S> {
        TruncSeries::y(self.ctx, i)
    }
}

type Frames = Vec<Vec<Rational>>;

fn fr(rows: &[&[i64]], den: i64) -> Frames {
    rows.iter().map(|r| r.iter().map(|&x| Rational::new(x, den)).collect()).collect()
}

/// Frames of the identity on the first keyframe of `f`.
fn idf(f: &Frames) -> Frames {
    vec![f[0].clone(), f[0].clone()]
}

fn reversed(f: &Frames) -> Frames {
    f.iter().rev().cloned().collect()
}

#[derive(Clone, Copy)]
enum Geo {
    Plain,
    Ghost,
    /// Around a red line; ghosts (if any) at this many local units.
    Red(i64),
}

/// One embedding of a local picture.
#[derive(Clone)]
struct Loc {
    family: Family,
    n: usize,
    k: usize,
    m_left: usize,
    labels: Option<Vec<usize>>,
    center: Rational,
    scale: Rational,
    kappa: Option<Rational>,
    kappa_sign: i64,
    reds: Vec<Rational>,
    mirror: bool,
    red: Option<usize>,
}

impl Loc {
    fn u(&self, i: usize) -> usize {
        self.labels.as_ref().expect("labelled picture")[i]
    }

    fn diagram(&self, frames: &Frames, decor: &[(usize, usize, Decor)]) -> Result<Diagram, DiagError> {
        let abs: Frames = frames
            .iter()
            .map(|f| {
                f.iter()
                    .map(|x| {
                        let x = if self.mirror { -x.clone() } else { x.clone() };
                        self.center.add_ref(&self.scale.mul_ref(&x))
                    })
                    .collect()
            })
            .collect();
        let spec_label = if self.family.is_klr() { Some(0) } else { None };
        let mut kf = Keyframes::new(self.family, abs).kappa(self.kappa.clone()).reds(self.reds.clone());
        if let Some(l) = &self.labels {
            kf = kf.labels(l.clone());
        }
        for i in 0..self.m_left {
            kf = kf.add_static(Rational::from_i64(-SPECTATOR - 10 * i as i64), spec_label);
        }
        for i in 0..self.n - self.k - self.m_left {
            kf = kf.add_static(Rational::from_i64(SPECTATOR + 10 * i as i64), spec_label);
        }
        for &(f, id, d) in decor {
            kf = kf.decorate(f, id, d);
        }
        kf.build()
    }

    /// Number of crossings acting by a divided difference.
    fn demazure_crossings(d: &Diagram) -> usize {
        let mut labels = d.bottom.labels().map(|l| l.to_vec());
        let mut c = 0;
        for e in &d.events {
            if let Event::SS(i) = e {
                match labels.as_mut() {
                    None => c += 1,
                    Some(l) => {
                        if l[*i] == l[i + 1] {
                            c += 1;
                        }
                        l.swap(*i, i + 1);
                    }
                }
            }
        }
        c
    }

    fn t<S: Scalar>(&self, c: TruncSeries<S>, frames: &Frames, decor: &[(usize, usize, Decor)]) -> Result<DiagExpr<S>, DiagError> {
        let d = self.diagram(frames, decor)?;
        let c = if self.mirror && Self::demazure_crossings(&d) % 2 == 1 { -c } else { c };
        Ok(DiagExpr::term(c, d))
    }

    /// A polynomial in the local dots `y_id` and in `h, z`, drawn on the identity.
    fn poly<S: Scalar>(&self, frames: &Frames, p: &TruncSeries<S>) -> Result<DiagExpr<S>, DiagError> {
        let ctx = *p.ctx();
        let mut out = DiagExpr::zero();
        for (m, c) in p.terms() {
            let mut exps = m.exps()[..ctx.nvars()].to_vec();
            let mut decor = Vec::new();
            for id in 0..self.k {
                for _ in 0..exps[ctx.y(id)] {
                    decor.push((0, id, Decor::Dot));
                }
            }
            for i in 0..ctx.n() {
                exps[ctx.y(i)] = 0;
            }
            let coef = TruncSeries::monomial(ctx, Mono::from_exps(&exps), c.clone());
            out = out.plus(self.t(coef, frames, &decor)?);
        }
        Ok(out)
    }

    fn context(&self, part: &str) -> Value {
        json!({
            "part": part,
            "labels": self.labels.as_ref().map(|u| u.iter().map(|i| i + 1).collect::<Vec<_>>()),
            "left_spectators": self.m_left,
            "red": self.red.map(|j| j + 1),
            "mirrored": self.mirror,
        })
    }
}

fn label_tuples(nl: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|v| (0..nl).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

impl<'a, S: Scalar> RelCtx<'a, S> {
    fn locs(&self, k: usize, geo: Geo) -> Vec<Loc> {
        let n = self.params.n;
        if k > n {
            return Vec::new();
        }
        let mut placements = vec![0, n - k];
        placements.dedup();
        let labelings: Vec<Option<Vec<usize>>> = if self.family.is_klr() {
            label_tuples(self.graph().len(), k).into_iter().map(Some).collect()
        } else {
            vec![None]
        };
        let sgn: i64 = if self.kappa_neg { -1 } else { 1 };
        let ghosts = self.family.has_ghosts();
        let thetas = self.params.reds.thetas();
        let reds = if self.family.has_reds() { thetas.clone() } else { Vec::new() };
        let one = Rational::from_i64(1);
        let mut out = Vec::new();
        let red_choices: Vec<Option<usize>> = match geo {
            Geo::Red(_) => (0..reds.len()).map(Some).collect(),
            _ => vec![None],
        };
        for red in red_choices {
            for &m_left in &placements {
                for labels in &labelings {
                    let (center, scale, kappa, mirror) = match geo {
                        Geo::Plain => (Rational::from_i64(BASE), one.clone(), Rational::from_i64(2 * sgn), false),
                        Geo::Ghost => (Rational::from_i64(BASE), one.clone(), Rational::from_i64(-1), !self.kappa_neg),
                        Geo::Red(mag) => (
                            thetas[red.unwrap()].clone(),
                            self.scale.clone(),
                            self.scale.mul_ref(&Rational::from_i64(mag * sgn)),
                            false,
                        ),
                    };
                    let kappa = if mirror { -kappa } else { kappa };
                    out.push(Loc {
                        family: self.family,
                        n,
                        k,
                        m_left,
                        labels: labels.clone(),
                        center,
                        scale,
                        kappa: if ghosts { Some(kappa) } else { None },
                        kappa_sign: sgn,
                        reds: reds.clone(),
                        mirror,
                        red,
                    });
                }
            }
        }
        out
    }
}

/// One concrete identity `lhs = rhs` between diagram expressions.
#[derive(Clone, Debug)]
pub struct RelInstance<S: Scalar> {
    pub relation: &'static str,
    pub id: String,
    pub context: Value,
    pub lhs: DiagExpr<S>,
    pub rhs: DiagExpr<S>,
}

type Parts<S> = Vec<(&'static str, DiagExpr<S>, DiagExpr<S>)>;
type BuildFn<S> = fn(&RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError>;

/// A named relation; `build` produces all of its instances for a parameter set.
pub struct Relation<S: Scalar> {
    pub id: &'static str,
    pub build: BuildFn<S>,
}

fn collect<S: Scalar>(
    rc: &RelCtx<S>,
    rel: &'static str,
    k: usize,
    geo: Geo,
    f: impl Fn(&Loc) -> Result<Parts<S>, DiagError>,
) -> Result<Vec<RelInstance<S>>, DiagError> {
    let mut out = Vec::new();
    for loc in rc.locs(k, geo) {
        for (part, lhs, rhs) in f(&loc)? {
            let id = format!("{rel}#{}", out.len() + 1);
            out.push(RelInstance { relation: rel, id, context: loc.context(part), lhs, rhs });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// local pictures
// ---------------------------------------------------------------------------

fn cross2() -> Frames {
    fr(&[&[0, 1], &[1, 0]], 4)
}
fn bigon2() -> Frames {
    fr(&[&[0, 1], &[1, 0], &[0, 1]], 4)
}
fn c1_3() -> Frames {
    fr(&[&[0, 1, 2], &[1, 0, 2]], 4)
}
fn c2_3() -> Frames {
    fr(&[&[0, 1, 2], &[0, 2, 1]], 4)
}
/// Middle strand passes left of the outer crossing: word `s1 s2 s1`.
fn triple_left() -> Frames {
    fr(&[&[0, 1, 2], &[2, -1, 0], &[2, 1, 0]], 4)
}
/// Middle strand passes right: word `s2 s1 s2`.
fn triple_right() -> Frames {
    fr(&[&[0, 1, 2], &[2, 3, 0], &[2, 1, 0]], 4)
}
/// Strand 0 crosses the ghost of strand 1 left to right and back.
fn ghost_bigon_a() -> Frames {
    fr(&[&[0, 15], &[10, 15], &[0, 15]], 10)
}
/// Strand 0 crosses the ghost of strand 1 right to left and back.
fn ghost_bigon_b() -> Frames {
    fr(&[&[0, 5], &[-10, 5], &[0, 5]], 10)
}
/// Strand 0 passes through the crossing of the ghosts of strands 1 and 2.
fn ghost_triple_a(bulge: i64) -> Frames {
    fr(&[&[0, 6, 14], &[2 * bulge, 14, 6], &[0, 14, 6]], 10)
}
/// The ghost of strand 2 passes through the crossing of strands 0 and 1.
fn ghost_triple_b(bulge: i64) -> Frames {
    fr(&[&[-4, 4, 10], &[4, -4, 10 + 2 * bulge], &[4, -4, 10]], 10)
}

const LEFT: i64 = -1;
const RIGHT: i64 = 1;

// ---------------------------------------------------------------------------
// Hecke side
// ---------------------------------------------------------------------------

/// `X_r C − C X_{r+1} = C X_r − X_{r+1} C = X_r − 𝗊X_{r+1}` for `C = T + 1`,
/// or `X_{r+1} − 𝗊X_r` for `C = T − 𝗊`.
fn hecke_dot_slide<S: Scalar>(rc: &RelCtx<S>, rel: &'static str, shifted: bool) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, rel, 2, Geo::Plain, |l| {
        let x = cross2();
        let (a, b) = if shifted { (rc.qq.neg_ref(), rc.one()) } else { (rc.one(), rc.qq.neg_ref()) };
        let rhs = l.t(a, &idf(&x), &[(0, 0, Decor::Sq(1))])?.plus(l.t(b, &idf(&x), &[(0, 1, Decor::Sq(1))])?);
        let p1 = l.t(rc.one(), &x, &[(1, 1, Decor::Sq(1))])?.plus(l.t(rc.c(-1), &x, &[(0, 1, Decor::Sq(1))])?);
        let p2 = l.t(rc.one(), &x, &[(0, 0, Decor::Sq(1))])?.plus(l.t(rc.c(-1), &x, &[(1, 0, Decor::Sq(1))])?);
        Ok(vec![("a", p1, rhs.clone()), ("b", p2, rhs)])
    })
}

fn hecke_quadratic<S: Scalar>(rc: &RelCtx<S>, rel: &'static str, k: TruncSeries<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, rel, 2, Geo::Plain, |l| Ok(vec![("", l.t(rc.one(), &bigon2(), &[])?, l.t(k.clone(), &cross2(), &[])?)]))
}

fn hecke_braid<S: Scalar>(rc: &RelCtx<S>, rel: &'static str) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, rel, 3, Geo::Plain, |l| {
        let lhs = l.t(rc.one(), &triple_left(), &[])?.plus(l.t(rc.c(-1), &triple_right(), &[])?);
        let rhs = l.t(rc.qq.clone(), &c1_3(), &[])?.plus(l.t(rc.qq.neg_ref(), &c2_3(), &[])?);
        Ok(vec![("", lhs, rhs)])
    })
}

fn hecke1<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    hecke_dot_slide(rc, "Hecke-1", false)
}
fn hecke2<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    hecke_quadratic(rc, "Hecke-2", &rc.one() + &rc.qq)
}
fn hecke_triple<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    hecke_braid(rc, "Hecke-triple")
}
fn qhecke1<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    hecke_dot_slide(rc, "qHecke-1", true)
}
fn qhecke2<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    hecke_quadratic(rc, "qHecke-2", -(&rc.one() + &rc.qq))
}
fn qhecke_triple<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    hecke_braid(rc, "qHecke-triple")
}

/// A strand bigon around red line `j` is `X − Q̃_j`.
fn qh_cost<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, "qHcost", 1, Geo::Red(5), |l| {
        let j = l.red.unwrap();
        let mut parts = Vec::new();
        for (part, f) in [("from-right", fr(&[&[2], &[-2], &[2]], 4)), ("from-left", fr(&[&[-2], &[2], &[-2]], 4))] {
            let rhs = l.t(rc.one(), &idf(&f), &[(0, 0, Decor::Sq(1))])?.plus(l.t(rc.qt[j].neg_ref(), &idf(&f), &[])?);
            parts.push((part, l.t(rc.one(), &f, &[])?, rhs));
        }
        Ok(parts)
    })
}

fn red_triple_d1() -> Frames {
    fr(&[&[-2, 2], &[1, 2], &[2, 1], &[2, -2]], 4)
}
fn red_triple_d2() -> Frames {
    fr(&[&[-2, 2], &[-2, -1], &[-1, -2], &[2, -2]], 4)
}

/// Two strands exchanging sides of a red line, crossing to the right of it minus
/// crossing to the left of it.
fn red_triple_hecke<S: Scalar>(rc: &RelCtx<S>, rel: &'static str, demazure: bool) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, rel, 2, Geo::Red(5), |l| {
        let (d1, d2) = (red_triple_d1(), red_triple_d2());
        let lhs = l.t(rc.one(), &d1, &[])?.plus(l.t(rc.c(-1), &d2, &[])?);
        let id = idf(&d1);
        let rhs = if demazure {
            l.t(rc.one(), &id, &[])?
        } else {
            l.t(rc.one(), &id, &[(0, 0, Decor::Sq(1))])?.plus(l.t(rc.qq.neg_ref(), &id, &[(0, 1, Decor::Sq(1))])?)
        };
        Ok(vec![("", lhs, rhs)])
    })
}

fn qred_triple<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    red_triple_hecke(rc, "qred-triple", false)
}
fn pc_smart_red_triple<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    red_triple_hecke(rc, "PCsmart-red-triple", true)
}

/// Crossing of a strand (or ghost) with a ghost moved across a red line.
fn dumb_red_triple<S: Scalar>(rc: &RelCtx<S>, rel: &'static str) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, rel, 2, Geo::Red(3), |l| {
        let s = l.kappa_sign * 12;
        let owner = |g: &[i64]| g.iter().map(|x| x - s).collect::<Vec<_>>();
        let pic = |a: &[i64], b: &[i64]| {
            let rows: Vec<Vec<i64>> = (0..3).map(|t| vec![a[t], b[t]]).collect();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            fr(&refs, 4)
        };
        let mut parts = Vec::new();
        // (strand, ghost): the strand crosses the red line and a ghost crosses both
        let cases: [(&'static str, [i64; 3], [i64; 3], [i64; 3], [i64; 3], bool); 3] = [
            ("strand-ghost", [-2, 1, 2], [2, 2, -2], [-2, -2, 2], [2, -1, -2], true),
            ("ghost-strand", [2, -1, -2], [-2, -2, 2], [2, 2, -2], [-2, 1, 2], true),
            ("ghost-ghost", [2, 2, -2], [-2, 1, 2], [2, -1, -2], [-2, -2, 2], false),
        ];
        for (part, a1, b1, a2, b2, first_is_strand) in cases {
            let (p1, p2) = if first_is_strand {
                (pic(&a1, &owner(&b1)), pic(&a2, &owner(&b2)))
            } else {
                (pic(&owner(&a1), &owner(&b1)), pic(&owner(&a2), &owner(&b2)))
            };
            parts.push((part, l.t(rc.one(), &p1, &[])?, l.t(rc.one(), &p2, &[])?));
        }
        Ok(parts)
    })
}

fn pc_dumb_red_triple<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    dumb_red_triple(rc, "PC-dumb-red-triple")
}

/// `Y_r ∂ − ∂ Y_{r+1} = ∂ Y_r − Y_{r+1} ∂ = 1` in the weighted Hecke family.
fn nil_hecke2<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, "nilHecke-2", 2, Geo::Plain, |l| {
        let x = cross2();
        let p1 = l.t(rc.one(), &x, &[(1, 1, Decor::Sq(1))])?.plus(l.t(rc.c(-1), &x, &[(0, 1, Decor::Sq(1))])?);
        let p2 = l.t(rc.one(), &x, &[(0, 0, Decor::Sq(1))])?.plus(l.t(rc.c(-1), &x, &[(1, 0, Decor::Sq(1))])?);
        let id = l.t(rc.one(), &idf(&x), &[])?;
        Ok(vec![("a", p1, id.clone()), ("b", p2, id)])
    })
}

fn nil_hecke3<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    let mut out = collect(rc, "NilHecke3", 2, Geo::Plain, |l| Ok(vec![("bigon", l.t(rc.one(), &bigon2(), &[])?, DiagExpr::zero())]))?;
    let braid = collect(rc, "NilHecke3", 3, Geo::Plain, |l| {
        Ok(vec![("braid", l.t(rc.one(), &triple_left(), &[])?, l.t(rc.one(), &triple_right(), &[])?)])
    })?;
    for mut b in braid {
        b.id = format!("NilHecke3#{}", out.len() + 1);
        out.push(b);
    }
    Ok(out)
}

/// A strand crossing the ghost of its right neighbour twice: `X_A − 𝗊X_B`.
fn green_ghost_bigon<S: Scalar>(rc: &RelCtx<S>, rel: &'static str, f: Frames) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, rel, 2, Geo::Ghost, |l| {
        let id = idf(&f);
        let rhs = l.t(rc.one(), &id, &[(0, 0, Decor::Sq(1))])?.plus(l.t(rc.qq.neg_ref(), &id, &[(0, 1, Decor::Sq(1))])?);
        Ok(vec![("", l.t(rc.one(), &f, &[])?, rhs)])
    })
}

fn green_ghost_bigon1<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    green_ghost_bigon(rc, "green-ghost-bigon1", ghost_bigon_a())
}
fn green_ghost_bigon2<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    green_ghost_bigon(rc, "green-ghost-bigon2", ghost_bigon_b())
}

fn waha_triple_point1<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, "triple-point-1", 3, Geo::Ghost, |l| {
        let lhs = l.t(rc.one(), &ghost_triple_a(LEFT), &[])?.plus(l.t(rc.c(-1), &ghost_triple_a(RIGHT), &[])?);
        Ok(vec![("", lhs, l.t(rc.qq.neg_ref(), &idf(&ghost_triple_a(LEFT)), &[])?)])
    })
}

fn waha_triple_point2<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, "triple-point-2", 3, Geo::Ghost, |l| {
        let lhs = l.t(rc.one(), &ghost_triple_b(LEFT), &[])?.plus(l.t(rc.c(-1), &ghost_triple_b(RIGHT), &[])?);
        Ok(vec![("", lhs, l.t(rc.one(), &idf(&ghost_triple_b(LEFT)), &[])?)])
    })
}

// ---------------------------------------------------------------------------
// KLR side
// ---------------------------------------------------------------------------

/// `ψ²` on `e(u, v)` as a polynomial in the dots of strands `a` (label `u`, left)
/// and `b` (label `v`), for the ordinary KLR action with graph `q`.
fn bigon_poly<S: Scalar>(rc: &RelCtx<S>, u: usize, v: usize, a: &TruncSeries<S>, b: &TruncSeries<S>) -> TruncSeries<S> {
    if u == v {
        return TruncSeries::zero(rc.ctx);
    }
    let mut p = rc.one();
    if rc.graph().is_edge(u, v) {
        p = &p * &(&(b - a) + &rc.ch());
    }
    if rc.graph().is_edge(v, u) {
        p = &p * &(&(a - b) + &rc.ch());
    }
    p
}

/// `y_r ψ = ψ y_{r+1}`, `ψ y_r = y_{r+1} ψ` for different labels; the same with
/// `± 1` on the right for equal labels.
fn dot_slide<S: Scalar>(rc: &RelCtx<S>, rel: &'static str, equal: bool) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, rel, 2, Geo::Plain, |l| {
        if (l.u(0) == l.u(1)) != equal {
            return Ok(vec![]);
        }
        let x = cross2();
        let p1 = l.t(rc.one(), &x, &[(1, 1, Decor::Dot)])?.plus(l.t(rc.c(-1), &x, &[(0, 1, Decor::Dot)])?);
        let p2 = l.t(rc.one(), &x, &[(0, 0, Decor::Dot)])?.plus(l.t(rc.c(-1), &x, &[(1, 0, Decor::Dot)])?);
        let rhs = if equal { l.t(rc.sign(), &idf(&x), &[])? } else { DiagExpr::zero() };
        Ok(vec![("a", p1, rhs.clone()), ("b", p2, rhs)])
    })
}

fn first_qh<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    dot_slide(rc, "first-QH", false)
}
fn nil_hecke1<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    dot_slide(rc, "nilHecke-1", true)
}
fn dots1<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    dot_slide(rc, "dots-1", false)
}
fn dots2<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    dot_slide(rc, "dots-2", true)
}

fn black_bigon<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, "black-bigon", 2, Geo::Plain, |l| {
        let p = bigon_poly(rc, l.u(0), l.u(1), &rc.y(0), &rc.y(1));
        Ok(vec![("", l.t(rc.one(), &bigon2(), &[])?, l.poly(&idf(&bigon2()), &p)?)])
    })
}

/// Weighted KLR: the strand bigon is `0` for equal labels and `1` otherwise.
fn strand_bigon<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, "strand-bigon", 2, Geo::Plain, |l| {
        let rhs = if l.u(0) == l.u(1) { DiagExpr::zero() } else { l.t(rc.one(), &idf(&bigon2()), &[])? };
        Ok(vec![("", l.t(rc.one(), &bigon2(), &[])?, rhs)])
    })
}

fn triple_dumb<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, "triple-dumb", 3, Geo::Plain, |l| {
        let lhs = l.t(rc.one(), &triple_left(), &[])?.plus(l.t(rc.c(-1), &triple_right(), &[])?);
        let (u, v, w) = (l.u(0), l.u(1), l.u(2));
        let rhs = if u == w {
            let qa = bigon_poly(rc, u, v, &rc.y(0), &rc.y(1));
            let qc = bigon_poly(rc, u, v, &rc.y(2), &rc.y(1));
            let p = (&qa - &qc).div_linear(&(&rc.y(0) - &rc.y(2)))?;
            l.poly(&idf(&triple_left()), &(&p * &rc.sign()))?
        } else {
            DiagExpr::zero()
        };
        Ok(vec![("", lhs, rhs)])
    })
}

fn triple_boring<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, "triple-boring", 3, Geo::Plain, |l| {
        Ok(vec![("", l.t(rc.one(), &triple_left(), &[])?, l.t(rc.one(), &triple_right(), &[])?)])
    })
}

/// Strand `a` (label `u`) crossing the ghost of `b` (label `v`) twice:
/// `y_b − y_a + h` when `u = q·v`, else the identity.
fn wklr_ghost_bigon<S: Scalar>(rc: &RelCtx<S>, rel: &'static str, f: Frames) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, rel, 2, Geo::Ghost, |l| {
        let p = if rc.graph().is_edge(l.u(1), l.u(0)) { &(&rc.y(1) - &rc.y(0)) + &rc.ch() } else { rc.one() };
        Ok(vec![("", l.t(rc.one(), &f, &[])?, l.poly(&idf(&f), &p)?)])
    })
}

fn ghost_bigon1<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    wklr_ghost_bigon(rc, "ghost-bigon1", ghost_bigon_a())
}
fn ghost_bigon1a<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    wklr_ghost_bigon(rc, "ghost-bigon1a", ghost_bigon_b())
}

/// Strand 0 (label `u`) through the crossing of the ghosts of strands 1, 2
/// (labels `w`, `v`): the identity when `u = q·v = q·w`.
fn wklr_triple_point1<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, "triple-point1", 3, Geo::Ghost, |l| {
        let lhs = l.t(rc.one(), &ghost_triple_a(LEFT), &[])?.plus(l.t(rc.c(-1), &ghost_triple_a(RIGHT), &[])?);
        let (u, w, v) = (l.u(0), l.u(1), l.u(2));
        let rhs = if v == w && rc.graph().is_edge(w, u) {
            l.t(rc.sign(), &idf(&ghost_triple_a(LEFT)), &[])?
        } else {
            DiagExpr::zero()
        };
        Ok(vec![("", lhs, rhs)])
    })
}

/// The ghost of strand 2 (label `w`) through the crossing of strands 0, 1
/// (labels `u`, `v`): minus the identity when `u = v = q·w`.
fn wklr_triple_point2<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, "KLRtriple-point2", 3, Geo::Ghost, |l| {
        let lhs = l.t(rc.one(), &ghost_triple_b(LEFT), &[])?.plus(l.t(rc.c(-1), &ghost_triple_b(RIGHT), &[])?);
        let (u, v, w) = (l.u(0), l.u(1), l.u(2));
        let rhs = if u == v && rc.graph().is_edge(w, v) {
            l.t(rc.sign().neg_ref(), &idf(&ghost_triple_b(LEFT)), &[])?
        } else {
            DiagExpr::zero()
        };
        Ok(vec![("", lhs, rhs)])
    })
}

/// Bigon of a strand with label `u` around red line `j`: `y − z_j` when `u = Q_j`.
fn cost<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, "cost", 1, Geo::Red(5), |l| {
        let j = l.red.unwrap();
        let line = &rc.params.reds.lines()[j];
        let p = if line.q == l.u(0) { &rc.y(0) - &TruncSeries::z(rc.ctx, line.z) } else { rc.one() };
        let mut parts = Vec::new();
        for (part, f) in [("from-right", fr(&[&[2], &[-2], &[2]], 4)), ("from-left", fr(&[&[-2], &[2], &[-2]], 4))] {
            parts.push((part, l.t(rc.one(), &f, &[])?, l.poly(&idf(&f), &p)?));
        }
        Ok(parts)
    })
}

/// Two strands crossing each other on either side of a red line they both cross.
fn dumb<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, "dumb", 2, Geo::Red(5), |l| {
        let left = fr(&[&[-4, -2], &[-1, -3], &[4, 2]], 4);
        let right = fr(&[&[-4, -2], &[2, 3], &[4, 2]], 4);
        Ok(vec![
            ("left-to-right", l.t(rc.one(), &left, &[])?, l.t(rc.one(), &right, &[])?),
            ("right-to-left", l.t(rc.one(), &reversed(&left), &[])?, l.t(rc.one(), &reversed(&right), &[])?),
        ])
    })
}

fn red_dot<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, "red-dot", 1, Geo::Red(5), |l| {
        let mut parts = Vec::new();
        for (part, f) in [("left-to-right", fr(&[&[-2], &[2]], 4)), ("right-to-left", fr(&[&[2], &[-2]], 4))] {
            parts.push((part, l.t(rc.one(), &f, &[(1, 0, Decor::Dot)])?, l.t(rc.one(), &f, &[(0, 0, Decor::Dot)])?));
        }
        Ok(parts)
    })
}

/// Strands `v` (left) and `u` exchanging sides of red line `j`: the difference of
/// the two resolutions is `±1` when `u = v = Q_j`, else zero.
fn red_triple<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    collect(rc, "red-triple", 2, Geo::Red(5), |l| {
        let j = l.red.unwrap();
        let q = rc.params.reds.lines()[j].q;
        let lhs = l.t(rc.one(), &red_triple_d1(), &[])?.plus(l.t(rc.c(-1), &red_triple_d2(), &[])?);
        let rhs = if l.u(0) == q && l.u(1) == q { l.t(rc.sign(), &idf(&red_triple_d1()), &[])? } else { DiagExpr::zero() };
        Ok(vec![("", lhs, rhs)])
    })
}

fn klr_dumb_red_triple<S: Scalar>(rc: &RelCtx<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    dumb_red_triple(rc, "KLR-dumb-red-triple")
}

/// Relations of a family, in presentation order.
pub fn registry<S: Scalar>(family: Family) -> Vec<Relation<S>> {
    macro_rules! rels {
        ($($id:literal => $f:ident),* $(,)?) => { vec![$(Relation { id: $id, build: $f::<S> }),*] };
    }
    let hecke = rels!["Hecke-1" => hecke1, "Hecke-2" => hecke2, "Hecke-triple" => hecke_triple];
    let klr = rels!["first-QH" => first_qh, "nilHecke-1" => nil_hecke1, "black-bigon" => black_bigon, "triple-dumb" => triple_dumb];
    let waha = rels![
        "nilHecke-2" => nil_hecke2,
        "NilHecke3" => nil_hecke3,
        "green-ghost-bigon1" => green_ghost_bigon1,
        "green-ghost-bigon2" => green_ghost_bigon2,
        "triple-point-1" => waha_triple_point1,
        "triple-point-2" => waha_triple_point2,
    ];
    let wklr = rels![
        "dots-1" => dots1,
        "dots-2" => dots2,
        "strand-bigon" => strand_bigon,
        "ghost-bigon1" => ghost_bigon1,
        "ghost-bigon1a" => ghost_bigon1a,
        "triple-boring" => triple_boring,
        "triple-point1" => wklr_triple_point1,
        "KLRtriple-point2" => wklr_triple_point2,
    ];
    let red_klr = rels!["cost" => cost, "dumb" => dumb, "red-dot" => red_dot, "red-triple" => red_triple];
    match family {
        Family::HeckeOPlus | Family::HeckeOMinus => hecke,
        Family::FHecke => hecke.into_iter().chain(rels!["qHcost" => qh_cost, "qred-triple" => qred_triple]).collect(),
        Family::Waha => waha,
        Family::WfHecke => waha
            .into_iter()
            .chain(rels![
                "qHcost" => qh_cost,
                "PCsmart-red-triple" => pc_smart_red_triple,
                "PC-dumb-red-triple" => pc_dumb_red_triple,
            ])
            .collect(),
        Family::Klr => klr,
        Family::TLambda => klr.into_iter().chain(red_klr).collect(),
        Family::Wklr => wklr,
        Family::WfKlr => wklr.into_iter().chain(red_klr).chain(rels!["KLR-dumb-red-triple" => klr_dumb_red_triple]).collect(),
    }
}

/// Relations of the ordinary Hecke family written with `T − 𝗊` in place of `T + 1`.
pub fn qhecke_registry<S: Scalar>() -> Vec<Relation<S>> {
    vec![
        Relation { id: "qHecke-1", build: qhecke1::<S> },
        Relation { id: "qHecke-2", build: qhecke2::<S> },
        Relation { id: "qHecke-triple", build: qhecke_triple::<S> },
    ]
}

/// All instances of all relations of `family`.
pub fn instances<S: Scalar>(family: Family, params: &Params<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    let rc = RelCtx::new(family, params)?;
    let mut out = Vec::new();
    for r in registry::<S>(family) {
        out.extend((r.build)(&rc)?);
    }
    Ok(out)
}

/// Instances of the `T − 𝗊` relations on an ordinary Hecke family.
pub fn qhecke_instances<S: Scalar>(family: Family, params: &Params<S>) -> Result<Vec<RelInstance<S>>, DiagError> {
    let rc = RelCtx::new(family, params)?;
    let mut out = Vec::new();
    for r in qhecke_registry::<S>() {
        out.extend((r.build)(&rc)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paramkit::{RedData, RedLine, SeriesChoice, BChoice, DChoice};
    use crate::scalar::Fp;

    type F = Fp<7>;

    fn params(kappa: i64) -> Params<F> {
        let g = ParamGraph::new(F::from_i64(2), vec![F::from_i64(1), F::from_i64(2)]).unwrap();
        let s = SeriesChoice::new(BChoice::OnePlus, DChoice::One).unwrap();
        let reds = RedData::new(vec![RedLine { theta: Rational::from_i64(0), q: 0, z: 0 }]).unwrap();
        Params::new(g, s, 3, 3).with_kappa(Rational::from_i64(kappa)).unwrap().with_reds(reds)
    }

    #[test]
    fn registry_sizes() {
        let counts = [
            (Family::HeckeOPlus, 3),
            (Family::HeckeOMinus, 3),
            (Family::Klr, 4),
            (Family::Waha, 6),
            (Family::Wklr, 8),
            (Family::TLambda, 8),
            (Family::FHecke, 5),
            (Family::WfHecke, 9),
            (Family::WfKlr, 13),
        ];
        for (f, c) in counts {
            assert_eq!(registry::<F>(f).len(), c, "{f}");
        }
    }

    #[test]
    fn every_family_builds_for_both_kappa_signs() {
        for kappa in [-1, 1] {
            let p = params(kappa);
            for f in Family::ALL {
                let inst = instances(f, &p).unwrap_or_else(|e| panic!("{f}: {e}"));
                assert!(!inst.is_empty());
                for i in &inst {
                    let b = &i.lhs.terms[0].1.bottom;
                    for (_, d) in i.lhs.terms.iter().chain(i.rhs.terms.iter()) {
                        assert_eq!(&d.bottom, b, "{}", i.id);
                    }
                }
            }
        }
    }

    #[test]
    fn ghost_pictures_have_expected_words() {
        let p = params(-1);
        let rc = RelCtx::new(Family::Waha, &p).unwrap();
        let inst = waha_triple_point1(&rc).unwrap();
        let d = &inst[0].lhs.terms[0].1;
        let kinds: Vec<&str> = d
            .events
            .iter()
            .map(|e| match e {
                Event::SS(_) => "SS",
                Event::SG { .. } => "SG",
                _ => "?",
            })
            .collect();
        assert_eq!(kinds, vec!["SG", "SS", "SG"]);
    }
}
