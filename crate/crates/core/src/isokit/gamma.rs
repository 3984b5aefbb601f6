//! `γ_p`, its inverse, and the A-coefficients.
//!
//! A completed Hecke-side vector is stored per component `u` as a series in the
//! local coordinates `w_i = u_i^{-1}X_i − 1`, kept in the `y` slots of the context.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::paramkit::DChoice;
use crate::repkit::{ComponentLabel, ModuleVec};
use crate::ringkit::{Mono, TruncSeries, UniSeries, VarCtx, XEval, XPoly};
use crate::scalar::Scalar;

use super::{IsoConfig, IsoError};

/// `f(g_1, …, g_n)`: substitute `y_i ↦ g_i`, leaving `h` and `z` alone. Each `g_i`
/// must have zero constant term.
pub fn subst_y<S: Scalar>(f: &TruncSeries<S>, g: &[TruncSeries<S>]) -> TruncSeries<S> {
    let ctx = *f.ctx();
    let n = ctx.n();
    assert_eq!(g.len(), n);
    let mut powers: Vec<Vec<TruncSeries<S>>> = vec![vec![TruncSeries::one(ctx)]; n];
    let mut acc = TruncSeries::zero(ctx);
    for (m, c) in f.terms() {
        let mut rest = m.exps().to_vec();
        let mut t = TruncSeries::one(ctx);
        for (i, pw) in powers.iter_mut().enumerate() {
            let e = m.exp(ctx.y(i)) as usize;
            rest[ctx.y(i)] = 0;
            if e == 0 {
                continue;
            }
            while pw.len() <= e {
                let next = pw.last().unwrap() * &g[i];
                pw.push(next);
            }
            t = &t * &pw[e];
        }
        acc = &acc + &t.mul_mono(&Mono::from_exps(&rest)).scale(c);
    }
    acc.truncate(f.prec())
}

fn label_values<S: Scalar>(cfg: &IsoConfig<S>, u: &[usize]) -> Vec<S> {
    u.iter().map(|&i| cfg.label(i).clone()).collect()
}

/// The completed component of a Laurent polynomial: `X_i ↦ u_i(1 + w_i)`.
pub fn complete<S: Scalar>(cfg: &IsoConfig<S>, f: &XPoly<S>, u: &[usize]) -> TruncSeries<S> {
    XEval::new(*f.ctx(), &label_values(cfg, u), &UniSeries::one_plus()).eval(f)
}

fn b_minus_one<S: Scalar>(cfg: &IsoConfig<S>, ctx: VarCtx) -> UniSeries<S> {
    let mut c = cfg.hecke.series.b_series(ctx.cutoff()).coeffs().to_vec();
    if let Some(c0) = c.first_mut() {
        *c0 = S::zero();
    }
    UniSeries::new(c)
}

fn require_labels(c: &ComponentLabel) -> Result<&[usize], IsoError> {
    c.u.as_deref().ok_or_else(|| IsoError::Config("component without labels".into()))
}

/// `w_i ↦ b(y_i) − 1` on every component.
pub fn gamma_p<S: Scalar>(cfg: &IsoConfig<S>, v: &ModuleVec<TruncSeries<S>>) -> Result<ModuleVec<TruncSeries<S>>, IsoError> {
    let mut out = ModuleVec::new();
    for (c, f) in v.iter() {
        require_labels(c)?;
        let ctx = *f.ctx();
        let beta = b_minus_one(cfg, ctx);
        let g: Vec<_> = (0..ctx.n()).map(|i| TruncSeries::subst(&beta, &TruncSeries::y(ctx, i))).collect::<Result<_, _>>()?;
        out.insert(c.clone(), subst_y(f, &g));
    }
    Ok(out)
}

/// `y_i ↦ (b − 1)^{-1}(w_i)`, the two-sided inverse of [`gamma_p`].
pub fn gamma_p_inv<S: Scalar>(cfg: &IsoConfig<S>, v: &ModuleVec<TruncSeries<S>>) -> Result<ModuleVec<TruncSeries<S>>, IsoError> {
    let mut out = ModuleVec::new();
    for (c, f) in v.iter() {
        require_labels(c)?;
        let ctx = *f.ctx();
        let inv = b_minus_one(cfg, ctx)
            .reversion(ctx.cutoff())
            .ok_or_else(|| IsoError::Config("b − 1 has no compositional inverse".into()))?;
        let g: Vec<_> = (0..ctx.n()).map(|i| TruncSeries::subst(&inv, &TruncSeries::y(ctx, i))).collect::<Result<_, _>>()?;
        out.insert(c.clone(), subst_y(f, &g));
    }
    Ok(out)
}

/// Cached `X_i ↦ u_i b(y_i)` per component, plus the series the generator images use.
pub struct Evaluator<S: Scalar> {
    ctx: VarCtx,
    labels: Vec<S>,
    b: UniSeries<S>,
    qq: TruncSeries<S>,
    evals: HashMap<Vec<usize>, XEval<S>>,
    by: Vec<TruncSeries<S>>,
}

impl<S: Scalar> Evaluator<S> {
    pub fn new(cfg: &IsoConfig<S>) -> Result<Self, IsoError> {
        let ctx = cfg.ctx()?;
        let b = cfg.hecke.series.b_series(ctx.cutoff());
        let by = (0..ctx.n()).map(|i| TruncSeries::subst(&b, &TruncSeries::y(ctx, i))).collect::<Result<_, _>>()?;
        Ok(Evaluator {
            ctx,
            labels: cfg.hecke.graph.labels().to_vec(),
            b,
            qq: cfg.hecke.qq(ctx),
            evals: HashMap::new(),
            by,
        })
    }

    pub fn ctx(&self) -> VarCtx {
        self.ctx
    }

    /// `𝗊 = q·d(h)`.
    pub fn qq(&self) -> &TruncSeries<S> {
        &self.qq
    }

    /// `b(y_i)`.
    pub fn b_y(&self, i: usize) -> &TruncSeries<S> {
        &self.by[i]
    }

    /// `u_i b(y_i)`, the image of `X_i` on the component `u`.
    pub fn x_image(&self, u: &[usize], i: usize) -> TruncSeries<S> {
        self.by[i].scale(&self.labels[u[i]])
    }

    /// `γ_p(F e_u)`.
    pub fn gamma(&mut self, f: &XPoly<S>, u: &[usize]) -> TruncSeries<S> {
        let (ctx, labels, b) = (self.ctx, &self.labels, &self.b);
        self.evals
            .entry(u.to_vec())
            .or_insert_with(|| XEval::new(ctx, &u.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(), b))
            .eval(f)
    }
}

/// Which formula an A-coefficient uses, keyed by the labels on top of the crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ACase {
    Equal,
    QEdgeD1,
    QEdgeDexp,
    Generic,
}

impl ACase {
    pub fn name(self) -> &'static str {
        match self {
            ACase::Equal => "EQUAL",
            ACase::QEdgeD1 => "Q_EDGE_D1",
            ACase::QEdgeDexp => "Q_EDGE_DEXP",
            ACase::Generic => "GENERIC",
        }
    }

    pub fn of<S: Scalar>(cfg: &IsoConfig<S>, r: usize, u: &[usize]) -> ACase {
        if u[r] == u[r + 1] {
            ACase::Equal
        } else if cfg.hecke.graph.is_edge(u[r + 1], u[r]) {
            match cfg.hecke.series.d {
                DChoice::One => ACase::QEdgeD1,
                DChoice::Exp => ACase::QEdgeDexp,
            }
        } else {
            ACase::Generic
        }
    }
}

#[derive(Clone, Debug)]
pub struct ACoeff<S: Scalar> {
    pub r: usize,
    pub u: Vec<usize>,
    pub value: TruncSeries<S>,
    pub case: ACase,
}

impl<S: Scalar> ACoeff<S> {
    pub fn is_unit(&self) -> bool {
        self.value.is_unit()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r + 1,
            "u": self.u.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "case": self.case.name(),
            "constantTerm": self.value.constant_term().to_wire(),
            "value": self.value.to_json(),
        })
    }
}

/// `A^u_r`, with `u` the labels on top of the crossing.
pub fn a_coeff<S: Scalar>(cfg: &IsoConfig<S>, ev: &Evaluator<S>, r: usize, u: &[usize]) -> Result<ACoeff<S>, IsoError> {
    a_coeff_tagged(cfg, ev, r, u, ACase::of(cfg, r, u))
}

/// `A^u_r` computed with a forced case formula; a tag that does not fit the labels
/// ends in `NotDivisible`.
pub fn a_coeff_tagged<S: Scalar>(
    cfg: &IsoConfig<S>,
    ev: &Evaluator<S>,
    r: usize,
    u: &[usize],
    case: ACase,
) -> Result<ACoeff<S>, IsoError> {
    let ctx = ev.ctx();
    let (xr, xr1) = (ev.x_image(u, r), ev.x_image(u, r + 1));
    // φ = (u_r b(y_r) − 𝗊 u_{r+1} b(y_{r+1})) / (u_{r+1} b(y_{r+1}) − u_r b(y_r))
    let num = &xr - &(&xr1 * ev.qq());
    let den = &xr1 - &xr;
    let lin = &TruncSeries::y(ctx, r + 1) - &TruncSeries::y(ctx, r);
    let value = match case {
        ACase::Equal => {
            if u[r] != u[r + 1] {
                return Err(IsoError::NotDivisible(format!("EQUAL case with labels {} ≠ {}", u[r] + 1, u[r + 1] + 1)));
            }
            // φ·(y_{r+1} − y_r), times the sign of the KLR Demazure crossing
            let beta = den.div_linear(&lin)?;
            (&num * &beta.invert()?).scale_i64(cfg.sign())
        }
        ACase::QEdgeD1 | ACase::QEdgeDexp => {
            let p = if case == ACase::QEdgeDexp { &lin + &TruncSeries::h(ctx) } else { lin };
            let top = num.exact_div(&p)?;
            &top * &den.invert().map_err(|_| IsoError::NotDivisible("denominator of φ is not a unit".into()))?
        }
        ACase::Generic => &num * &den.invert().map_err(|_| IsoError::NotDivisible("denominator of φ is not a unit".into()))?,
    };
    Ok(ACoeff { r, u: u.to_vec(), value, case })
}
