//! KLR-side actions on truncated series in `y, h, z`.

use crate::diagramkit::{Diagram, Event, Family};
use crate::paramkit::{Dir, ParamGraph, Params};
use crate::ringkit::{TruncSeries, VarCtx};
use crate::scalar::{Rational, Scalar};

use super::{Rep, RepError};

pub struct KlrRep<S: Scalar> {
    family: Family,
    ctx: VarCtx,
    graph: ParamGraph<S>,
    sign: i64,
    ch: TruncSeries<S>,
    kappa_neg: bool,
    thetas: Vec<Rational>,
    /// `(Q_j, z-index)` per red line in position order.
    reds: Vec<(usize, usize)>,
}

impl<S: Scalar> KlrRep<S> {
    pub fn new(family: Family, params: &Params<S>) -> Result<Self, RepError> {
        if !family.is_klr() {
            return Err(RepError::WrongFamily(family, Family::Klr));
        }
        let ctx = params.ctx()?;
        let ch = if params.conv.klr_h { TruncSeries::h(ctx) } else { TruncSeries::zero(ctx) };
        Ok(KlrRep {
            family,
            ctx,
            graph: params.graph.clone(),
            sign: params.conv.klr_sign,
            ch,
            kappa_neg: params.kappa.as_ref().is_none_or(|k| k.is_negative()),
            thetas: if family.has_reds() { params.reds.thetas() } else { Vec::new() },
            reds: params.reds.lines().iter().map(|l| (l.q, l.z)).collect(),
        })
    }

    pub fn graph(&self) -> &ParamGraph<S> {
        &self.graph
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    fn y(&self, i: usize) -> TruncSeries<S> {
        TruncSeries::y(self.ctx, i)
    }

    /// `y_a − y_b + c·h`.
    pub fn p(&self, a: usize, b: usize) -> TruncSeries<S> {
        &(&self.y(a) - &self.y(b)) + &self.ch
    }

    /// The crossing `ψ_r` on the component with labels `u`; updates `u`.
    pub fn crossing(&self, r: usize, u: &mut [usize], f: &TruncSeries<S>) -> Result<TruncSeries<S>, RepError> {
        let (a, b) = (u[r], u[r + 1]);
        let out = if a == b {
            f.demazure(r)?.scale_i64(self.sign)
        } else if !self.family.has_ghosts() && self.graph.is_edge(b, a) {
            &f.swap_y(r) * &self.p(r + 1, r)
        } else {
            f.swap_y(r)
        };
        u.swap(r, r + 1);
        Ok(out)
    }

    /// The action of a single event on the component with labels `u`.
    pub fn event(&self, e: &Event, u: &mut [usize], f: &TruncSeries<S>) -> Result<TruncSeries<S>, RepError> {
        Ok(match e {
            Event::SS(r) => return self.crossing(*r, u, f),
            Event::Dot(i) => f * &self.y(*i),
            Event::SG { i, j, dir } => {
                let silent = matches!((self.kappa_neg, dir), (true, Dir::LeftToRight) | (false, Dir::RightToLeft));
                if !silent && self.graph.is_edge(u[*j], u[*i]) {
                    f * &self.p(*j, *i)
                } else {
                    f.clone()
                }
            }
            Event::SR { i, j, dir } => {
                let (q, z) = self.reds[*j];
                match dir {
                    Dir::LeftToRight if u[*i] == q => f * &(&self.y(*i) - &TruncSeries::z(self.ctx, z)),
                    _ => f.clone(),
                }
            }
            Event::Sq(..) => return Err(RepError::NoAction(e.to_string())),
        })
    }
}

impl<S: Scalar> Rep<S> for KlrRep<S> {
    type V = TruncSeries<S>;

    fn family(&self) -> Family {
        self.family
    }

    fn ctx(&self) -> VarCtx {
        self.ctx
    }

    fn thetas(&self) -> &[Rational] {
        &self.thetas
    }

    fn apply(&self, d: &Diagram, v: &TruncSeries<S>) -> Result<TruncSeries<S>, RepError> {
        if d.family != self.family {
            return Err(RepError::WrongFamily(d.family, self.family));
        }
        let mut u = d.bottom.labels().map(|l| l.to_vec()).ok_or_else(|| RepError::NoAction("unlabelled diagram".into()))?;
        let mut f = v.clone();
        for e in &d.events {
            f = self.event(e, &mut u, &f)?;
        }
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paramkit::{BChoice, DChoice, SeriesChoice};
    use crate::scalar::Fp;

    type F = Fp<7>;

    fn rep() -> KlrRep<F> {
        let g = ParamGraph::new(F::from_i64(2), vec![F::from_i64(1), F::from_i64(2), F::from_i64(4)]).unwrap();
        let s = SeriesChoice::new(BChoice::OnePlus, DChoice::One).unwrap();
        KlrRep::new(Family::Klr, &Params::new(g, s, 2, 4)).unwrap()
    }

    #[test]
    fn crossing_cases() {
        let r = rep();
        let one = TruncSeries::one(r.ctx);
        // labels (1, 4): 4 is neither 1 nor 2·1 ... 1 = 2·4 in F7, so the edge case applies
        let mut u = vec![0, 2];
        assert_eq!(r.crossing(0, &mut u, &one).unwrap(), r.p(1, 0));
        assert_eq!(u, vec![2, 0]);
        // labels (1, 2): 2 = q·1, so plain swap
        let mut u = vec![0, 1];
        assert_eq!(r.crossing(0, &mut u, &one).unwrap(), one);
        let mut u = vec![0, 0];
        assert_eq!(r.crossing(0, &mut u, &r.y(1)).unwrap(), TruncSeries::from_i64(r.ctx, -1));
    }
}
