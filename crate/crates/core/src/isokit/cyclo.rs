//! The cyclotomic ideals on both sides, and the diagram that generates the violating ideal.

use serde_json::{json, Value};

use crate::diagramkit::{Diagram, Keyframes};
use crate::paramkit::unsteady;
use crate::repkit::check::hecke_probes;
use crate::repkit::{HeckeRep, ModVal, Rep};
use crate::ringkit::{TruncSeries, VarCtx, XPoly};
use crate::scalar::{Rational, Scalar};

use super::{IsoConfig, IsoError, IsoType};

#[derive(Clone, Debug)]
pub struct CycloReport<S: Scalar> {
    pub u: Vec<usize>,
    pub q: Vec<usize>,
    pub sigma: i64,
    /// `γ(C(X_1))e_u`.
    pub image: TruncSeries<S>,
    /// Factors `X_1 − Q̃_j` with `Q_j ≠ u_1` map to units.
    pub others_units: bool,
    pub unit_ok: bool,
}

impl<S: Scalar> CycloReport<S> {
    pub fn pass(&self) -> bool {
        self.others_units && self.unit_ok
    }

    pub fn to_json(&self, unit: &TruncSeries<S>) -> Value {
        json!({
            "u": self.u.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "Q": self.q.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "sigma": self.sigma,
            "status": if self.pass() { "PASS" } else { "FAIL" },
            "unitConstantTerm": unit.constant_term().to_wire(),
            "certifiedDegree": unit.prec(),
        })
    }
}

/// `γ(C(X_1))e_u = unit · c_{u_1}(y_1)e_u`, with `C(A) = Π_j (A − Q_j b(σz_j))` and
/// `c_{u_1}(a) = Π_{Q_j = u_1}(a − z_j)`; `q` lists the `Q_j` as label indices.
///
/// Fails with `NotDivisible` when the sign `σ` of the configuration does not match
/// the KLR roots.
pub fn cyclo_correspondence<S: Scalar>(
    cfg: &IsoConfig<S>,
    q: &[usize],
    u: &[usize],
) -> Result<(TruncSeries<S>, CycloReport<S>), IsoError> {
    let base = cfg.ctx()?;
    let ctx = VarCtx::new(base.n(), q.len(), base.cutoff())?;
    let b = cfg.hecke.series.b_series(ctx.cutoff());
    let u1 = cfg.label(u[0]).clone();
    let x1 = TruncSeries::subst(&b, &TruncSeries::y(ctx, 0))?.scale(&u1);
    let sigma = cfg.sigma();
    let mut image = TruncSeries::one(ctx);
    let mut unit = TruncSeries::one(ctx);
    let mut others_units = true;
    for (j, &qj) in q.iter().enumerate() {
        let z = TruncSeries::z(ctx, j);
        let qt = TruncSeries::subst(&b, &z.scale_i64(sigma))?.scale(cfg.label(qj));
        let factor = &x1 - &qt;
        image = &image * &factor;
        if qj == u[0] {
            unit = &unit * &factor.exact_div(&(&TruncSeries::y(ctx, 0) - &z))?;
        } else {
            others_units &= factor.is_unit();
            unit = &unit * &factor;
        }
    }
    let unit_ok = unit.is_unit();
    let rep = CycloReport { u: u.to_vec(), q: q.to_vec(), sigma, image, others_units, unit_ok };
    Ok((unit, rep))
}

#[derive(Clone, Debug)]
pub struct ViolatingReport {
    pub family: String,
    pub diagram: Value,
    pub midslice: Vec<Rational>,
    pub unsteady: bool,
    pub operator_matches: bool,
    pub certified_degree: u32,
    pub counterexample: Option<String>,
}

impl ViolatingReport {
    pub fn pass(&self) -> bool {
        self.unsteady && self.operator_matches
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": "violating generator",
            "family": self.family,
            "status": if self.pass() { "PASS" } else { "FAIL" },
            "unsteady": self.unsteady,
            "operatorMatches": self.operator_matches,
            "midslice": self.midslice.iter().map(|x| x.to_wire()).collect::<Vec<_>>(),
            "certifiedDegree": self.certified_degree,
            "counterexample": self.counterexample,
            "diagram": self.diagram,
        })
    }
}

/// Pull the leftmost strand left of every red line and back, check the diagram acts
/// as `Π_s (X_1 − Q̃_s)` and that its middle slice is unsteady.
pub fn violating_generator_check<S: Scalar>(cfg: &IsoConfig<S>) -> Result<ViolatingReport, IsoError> {
    if !matches!(cfg.kind, IsoType::F | IsoType::Wf) {
        return Err(IsoError::Config("the violating generator needs red lines (type F or WF)".into()));
    }
    let (family, _) = cfg.kind.families();
    let ctx = cfg.ctx()?;
    let thetas = cfg.hecke.reds.thetas();
    let kappa = cfg.hecke.kappa.as_ref().map(|k| k.kappa().clone());
    let gap = kappa.as_ref().map(|k| k.abs()).unwrap_or_else(|| Rational::from_i64(0));
    let one = Rational::from_i64(1);
    let x0 = thetas.iter().max().expect("red lines").add_ref(&one);
    let far = thetas.iter().min().expect("red lines").sub_ref(&one);
    let rest: Vec<Rational> =
        (0..cfg.n() - 1).map(|k| x0.add_ref(&gap).add_ref(&one).add_ref(&Rational::from_i64(k as i64))).collect();
    let frame = |x: &Rational| [vec![x.clone()], rest.clone()].concat();
    let d: Diagram = Keyframes::new(family, vec![frame(&x0), frame(&far), frame(&x0)])
        .kappa(if cfg.kind.has_ghosts() { kappa.clone() } else { None })
        .reds(thetas.clone())
        .build()?;
    let midslice = frame(&far);
    let is_unsteady = unsteady(&midslice, &thetas, &gap);

    let rep = HeckeRep::new(family, &cfg.hecke)?;
    let mut product = XPoly::one(ctx);
    for qt in cfg.hecke.q_tilde(ctx) {
        product = &product * &(&XPoly::x(ctx, 0) - &XPoly::constant(ctx, qt));
    }
    let mut cert = ctx.cutoff();
    let mut counter = None;
    for f in hecke_probes::<S>(ctx, 1) {
        let lhs = rep.apply(&d, &f)?;
        let rhs = &product * &f;
        cert = cert.min(ModVal::prec(&lhs)).min(ModVal::prec(&rhs));
        if counter.is_none() {
            counter = ModVal::first_difference(&lhs, &rhs).map(|x| format!("probe {f}: {x}"));
        }
    }
    Ok(ViolatingReport {
        family: family.name().to_string(),
        diagram: d.to_json(),
        midslice,
        unsteady: is_unsteady,
        operator_matches: counter.is_none(),
        certified_degree: cert,
        counterexample: counter,
    })
}
