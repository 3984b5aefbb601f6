//! Hecke-side actions on Laurent polynomials in `X_1, …, X_n`.

use crate::diagramkit::{Diagram, Event, Family};
use crate::paramkit::{Dir, Params};
use crate::ringkit::{TruncSeries, VarCtx, XPoly};
use crate::scalar::{Rational, Scalar};

use super::{Rep, RepError};

/// Which operator a single strand crossing stands for, with `∂` the divided
/// difference `(F^s − F)/(X_{r+1} − X_r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossingMode {
    /// `T + 1` in the signed representation: `(X_r − 𝗊X_{r+1})∂`.
    MinusTPlusOne,
    /// `T + 1` in the unsigned representation: `(X_{r+1} − 𝗊X_r)∂ + 1 + 𝗊`.
    PlusTPlusOne,
    /// `T − 𝗊` in the signed representation: `(X_r − 𝗊X_{r+1})∂ − 1 − 𝗊`.
    MinusTMinusQ,
    /// `T − 𝗊` in the unsigned representation: `(X_{r+1} − 𝗊X_r)∂`.
    PlusTMinusQ,
    /// `∂` itself (weighted families).
    Demazure,
}

impl CrossingMode {
    pub const ALL: [CrossingMode; 5] = [
        CrossingMode::MinusTPlusOne,
        CrossingMode::PlusTPlusOne,
        CrossingMode::MinusTMinusQ,
        CrossingMode::PlusTMinusQ,
        CrossingMode::Demazure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CrossingMode::MinusTPlusOne => "signed T+1",
            CrossingMode::PlusTPlusOne => "unsigned T+1",
            CrossingMode::MinusTMinusQ => "signed T-q",
            CrossingMode::PlusTMinusQ => "unsigned T-q",
            CrossingMode::Demazure => "Demazure",
        }
    }

    pub fn default_for(family: Family) -> CrossingMode {
        match family {
            Family::HeckeOPlus => CrossingMode::PlusTPlusOne,
            Family::HeckeOMinus | Family::FHecke => CrossingMode::MinusTPlusOne,
            _ => CrossingMode::Demazure,
        }
    }
}

pub struct HeckeRep<S: Scalar> {
    family: Family,
    ctx: VarCtx,
    mode: CrossingMode,
    qq: TruncSeries<S>,
    qt: Vec<TruncSeries<S>>,
    kappa_neg: bool,
    thetas: Vec<Rational>,
}

impl<S: Scalar> HeckeRep<S> {
    pub fn new(family: Family, params: &Params<S>) -> Result<Self, RepError> {
        if family.is_klr() {
            return Err(RepError::WrongFamily(family, Family::HeckeOMinus));
        }
        let ctx = params.ctx()?;
        Ok(HeckeRep {
            family,
            ctx,
            mode: CrossingMode::default_for(family),
            qq: params.qq(ctx),
            qt: params.q_tilde(ctx),
            kappa_neg: params.kappa.as_ref().is_none_or(|k| k.is_negative()),
            thetas: if family.has_reds() { params.reds.thetas() } else { Vec::new() },
        })
    }

    pub fn with_mode(mut self, mode: CrossingMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn mode(&self) -> CrossingMode {
        self.mode
    }

    pub fn qq(&self) -> &TruncSeries<S> {
        &self.qq
    }

    fn x(&self, i: usize) -> XPoly<S> {
        XPoly::x(self.ctx, i)
    }

    fn konst(&self, c: TruncSeries<S>) -> XPoly<S> {
        XPoly::constant(self.ctx, c)
    }

    /// `X_i − 𝗊X_j`.
    fn lin(&self, i: usize, j: usize) -> XPoly<S> {
        &self.x(i) - &self.x(j).scale(&self.qq)
    }

    pub fn crossing(&self, r: usize, f: &XPoly<S>) -> XPoly<S> {
        let d = f.demazure(r);
        let one_q = &TruncSeries::one(self.ctx) + &self.qq;
        match self.mode {
            CrossingMode::Demazure => d,
            CrossingMode::MinusTPlusOne => &self.lin(r, r + 1) * &d,
            CrossingMode::PlusTMinusQ => &self.lin(r + 1, r) * &d,
            CrossingMode::MinusTMinusQ => &(&self.lin(r, r + 1) * &d) - &f.scale(&one_q),
            CrossingMode::PlusTPlusOne => &(&self.lin(r + 1, r) * &d) + &f.scale(&one_q),
        }
    }

    /// The action of a single event; `nu` is updated for red crossings.
    pub fn event(&self, e: &Event, f: &XPoly<S>) -> Result<XPoly<S>, RepError> {
        Ok(match e {
            Event::SS(r) => self.crossing(*r, f),
            Event::Sq(i, k) => f.mul_mono(&crate::ringkit::XMono::unit(*i, *k as i16)),
            Event::SG { i, j, dir } => {
                let silent = matches!((self.kappa_neg, dir), (true, Dir::LeftToRight) | (false, Dir::RightToLeft));
                if silent {
                    f.clone()
                } else {
                    &self.lin(*i, *j) * f
                }
            }
            Event::SR { i, j, dir } => match dir {
                Dir::RightToLeft => f.clone(),
                Dir::LeftToRight => &(&self.x(*i) - &self.konst(self.qt[*j].clone())) * f,
            },
            Event::Dot(_) => return Err(RepError::NoAction(e.to_string())),
        })
    }
}

impl<S: Scalar> Rep<S> for HeckeRep<S> {
    type V = XPoly<S>;

    fn family(&self) -> Family {
        self.family
    }

    fn ctx(&self) -> VarCtx {
        self.ctx
    }

    fn thetas(&self) -> &[Rational] {
        &self.thetas
    }

    fn apply(&self, d: &Diagram, v: &XPoly<S>) -> Result<XPoly<S>, RepError> {
        if d.family != self.family {
            return Err(RepError::WrongFamily(d.family, self.family));
        }
        let mut f = v.clone();
        for e in &d.events {
            f = self.event(e, &f)?;
        }
        Ok(f)
    }
}
