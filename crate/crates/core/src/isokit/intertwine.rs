//! Generator images and the intertwining check `γ_p(g·F) = γ(g)·γ_p(F)`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::diagramkit::Event;
use crate::paramkit::Dir;
use crate::repkit::check::hecke_probes;
use crate::repkit::{ComponentLabel, HeckeRep, KlrRep, ModVal, ModuleVec, Status};
use crate::ringkit::{TruncSeries, XMono, XPoly};
use crate::scalar::Scalar;

use super::gamma::{a_coeff, complete, gamma_p, gamma_p_inv, Evaluator};
use super::{IsoConfig, IsoError};

/// A Hecke-side generator, with 0-based strand and red indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `X_r^e`, `e = ±1`.
    X { r: usize, e: i16 },
    /// `Φ_r = T_r + Σ_{u_r ≠ u_{r+1}} (1 − 𝗊)/(1 − X_r X_{r+1}^{-1}) e_u + Σ_{u_r = u_{r+1}} e_u`.
    Phi { r: usize },
    /// The strand crossing of a weighted family (the Demazure operator).
    Cross { r: usize },
    /// Strand `i` crossing the ghost of strand `j`.
    Ghost { i: usize, j: usize, dir: Dir },
    /// Strand `i` crossing red line `j`.
    Red { i: usize, j: usize, dir: Dir },
}

fn dir_name(d: Dir) -> &'static str {
    match d {
        Dir::LeftToRight => "L->R",
        Dir::RightToLeft => "R->L",
    }
}

impl Generator {
    pub fn name(&self) -> String {
        match *self {
            Generator::X { r, e } if e == 1 => format!("X_{}", r + 1),
            Generator::X { r, e } => format!("X_{}^{}", r + 1, e),
            Generator::Phi { r } => format!("Phi_{}", r + 1),
            Generator::Cross { r } => format!("crossing_{}", r + 1),
            Generator::Ghost { i, j, dir } => format!("ghost(strand {} / ghost {}, {})", i + 1, j + 1, dir_name(dir)),
            Generator::Red { i, j, dir } => format!("red(strand {} / red {}, {})", i + 1, j + 1, dir_name(dir)),
        }
    }

    /// The diagram event this generator is, when it is one.
    pub fn event(&self) -> Option<Event> {
        match *self {
            Generator::Cross { r } => Some(Event::SS(r)),
            Generator::Ghost { i, j, dir } => Some(Event::SG { i, j, dir }),
            Generator::Red { i, j, dir } => Some(Event::SR { i, j, dir }),
            Generator::X { .. } | Generator::Phi { .. } => None,
        }
    }
}

/// The generators checked by default for a configuration.
pub fn default_generators<S: Scalar>(cfg: &IsoConfig<S>) -> Vec<Generator> {
    let n = cfg.n();
    let mut g = Vec::new();
    for r in 0..n {
        g.push(Generator::X { r, e: 1 });
        g.push(Generator::X { r, e: -1 });
    }
    for r in 0..n.saturating_sub(1) {
        g.push(if cfg.kind.has_ghosts() { Generator::Cross { r } } else { Generator::Phi { r } });
    }
    if cfg.kind.has_ghosts() {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    for dir in [Dir::LeftToRight, Dir::RightToLeft] {
                        g.push(Generator::Ghost { i, j, dir });
                    }
                }
            }
        }
    }
    if cfg.kind.has_reds() {
        for i in 0..n {
            for j in 0..cfg.hecke.reds.len() {
                for dir in [Dir::LeftToRight, Dir::RightToLeft] {
                    g.push(Generator::Red { i, j, dir });
                }
            }
        }
    }
    g
}

/// One summand of a generator image: on the component `source`, apply `event` on
/// the KLR side (or nothing), then multiply by `coef`; the result lies on `target`.
#[derive(Clone, Debug)]
pub struct Term<S: Scalar> {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub coef: TruncSeries<S>,
    pub event: Option<Event>,
}

fn swapped(u: &[usize], r: usize) -> Vec<usize> {
    let mut v = u.to_vec();
    v.swap(r, r + 1);
    v
}

fn ghost_silent<S: Scalar>(cfg: &IsoConfig<S>, dir: Dir) -> bool {
    let neg = cfg.hecke.kappa.as_ref().is_none_or(|k| k.is_negative());
    matches!((neg, dir), (true, Dir::LeftToRight) | (false, Dir::RightToLeft))
}

/// `γ(g)e_u` as a list of terms.
pub fn gamma_gen<S: Scalar>(cfg: &IsoConfig<S>, ev: &Evaluator<S>, g: &Generator, u: &[usize]) -> Result<Vec<Term<S>>, IsoError> {
    let ctx = ev.ctx();
    let same = |coef: TruncSeries<S>, event: Option<Event>| Term { source: u.to_vec(), target: u.to_vec(), coef, event };
    Ok(match *g {
        Generator::X { r, e } => {
            let x = ev.x_image(u, r);
            vec![same(if e >= 0 { x.pow(e as u32) } else { x.invert()?.pow(e.unsigned_abs() as u32) }, None)]
        }
        Generator::Phi { r } => {
            let v = swapped(u, r);
            let a = a_coeff(cfg, ev, r, &v)?;
            vec![Term { source: u.to_vec(), target: v, coef: a.value, event: Some(Event::SS(r)) }]
        }
        Generator::Cross { r } => {
            if u[r] != u[r + 1] {
                // (ψ_r − 1)/(u_{r+1}b(y_{r+1}) − u_r b(y_r)), the coefficient read on the output component
                let v = swapped(u, r);
                let dv = &ev.x_image(&v, r + 1) - &ev.x_image(&v, r);
                let du = &ev.x_image(u, r + 1) - &ev.x_image(u, r);
                vec![
                    Term { source: u.to_vec(), target: v, coef: dv.invert()?, event: Some(Event::SS(r)) },
                    same(du.invert()?.neg_ref(), None),
                ]
            } else {
                // (y_{r+1} − y_r)/(u_r(b(y_{r+1}) − b(y_r))), signed like the KLR Demazure crossing
                let lin = &TruncSeries::y(ctx, r + 1) - &TruncSeries::y(ctx, r);
                let beta = (&ev.x_image(u, r + 1) - &ev.x_image(u, r)).div_linear(&lin)?;
                vec![same(beta.invert()?.scale_i64(cfg.sign()), Some(Event::SS(r)))]
            }
        }
        Generator::Ghost { i, j, dir } => {
            let coef = if ghost_silent(cfg, dir) {
                TruncSeries::one(ctx)
            } else {
                let num = &ev.x_image(u, i) - &(&ev.x_image(u, j) * ev.qq());
                if cfg.klr.graph.is_edge(u[j], u[i]) {
                    let h = if cfg.klr.conv.klr_h { TruncSeries::h(ctx) } else { TruncSeries::zero(ctx) };
                    num.exact_div(&(&(&TruncSeries::y(ctx, j) - &TruncSeries::y(ctx, i)) + &h))?
                } else {
                    num
                }
            };
            vec![same(coef, Some(Event::SG { i, j, dir }))]
        }
        Generator::Red { i, j, dir } => {
            let coef = match dir {
                Dir::RightToLeft => TruncSeries::one(ctx),
                Dir::LeftToRight => {
                    let qt = &cfg.hecke.q_tilde(ctx)[j];
                    let num = &ev.x_image(u, i) - qt;
                    let line = &cfg.hecke.reds.lines()[j];
                    if u[i] == line.q {
                        num.exact_div(&(&TruncSeries::y(ctx, i) - &TruncSeries::z(ctx, line.z)))?
                    } else {
                        num
                    }
                }
            };
            vec![same(coef, Some(Event::SR { i, j, dir }))]
        }
    })
}

#[derive(Clone, Debug)]
pub struct IsoOpts {
    /// Hecke-side probes `X^a`, `a ∈ [−A, A]^n`.
    pub probe_box: i16,
    /// Multiply every event-carrying coefficient by `1 + h` (checker sanity).
    pub perturb: bool,
}

impl Default for IsoOpts {
    fn default() -> Self {
        IsoOpts { probe_box: 2, perturb: false }
    }
}

#[derive(Clone, Debug)]
pub struct IsoRecord {
    pub generator: String,
    pub family: String,
    pub context: Value,
    pub status: Status,
    pub certified_degree: u32,
    pub convention: Value,
    pub unit_constant_term: Option<String>,
    pub counterexample: Option<Value>,
}

impl IsoRecord {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "generator": self.generator,
            "family": self.family,
            "context": self.context,
            "status": self.status.as_str(),
            "certifiedDegree": self.certified_degree,
            "convention": self.convention,
        });
        if let Some(u) = &self.unit_constant_term {
            v["unitConstantTerm"] = json!(u);
        }
        if let Some(c) = &self.counterexample {
            v["counterexample"] = c.clone();
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct IsoReport {
    pub family: String,
    pub header: Value,
    pub records: Vec<IsoRecord>,
}

impl IsoReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn failures(&self) -> Vec<&IsoRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail).collect()
    }

    pub fn summary(&self) -> Value {
        json!({
            "summary": true,
            "family": self.family,
            "records": self.records.len(),
            "failed": self.failures().len(),
            "status": if self.all_pass() { "PASS" } else { "FAIL" },
            "conventions": self.header,
        })
    }

    pub fn to_jsonl(&self) -> String {
        crate::report::jsonl(self.records.iter().map(|r| r.to_json()), self.summary())
    }

    pub fn extend(&mut self, o: IsoReport) {
        self.records.extend(o.records);
    }
}

fn labels_json(u: &[usize]) -> Value {
    json!(u.iter().map(|i| i + 1).collect::<Vec<_>>())
}

fn family_name<S: Scalar>(cfg: &IsoConfig<S>) -> String {
    let (a, b) = cfg.kind.families();
    format!("{} ~ {}", a.name(), b.name())
}

fn header<S: Scalar>(cfg: &IsoConfig<S>) -> Value {
    json!({
        "type": cfg.kind.name(),
        "n": cfg.n(),
        "order": cfg.hecke.order,
        "series": cfg.hecke.series.name(),
        "kappa": cfg.hecke.kappa.as_ref().map(|k| k.kappa().to_wire()),
        "reds": cfg.hecke.reds.len(),
        "convention": cfg.convention(),
    })
}

/// The Hecke-side action of `g` on the component `v` of `F`, pushed through `γ_p`.
fn hecke_side<S: Scalar>(
    ev: &mut Evaluator<S>,
    rep: &HeckeRep<S>,
    g: &Generator,
    f: &XPoly<S>,
    v: &[usize],
) -> Result<TruncSeries<S>, IsoError> {
    Ok(match *g {
        Generator::X { r, e } => ev.gamma(&f.mul_mono(&XMono::unit(r, e)), v),
        Generator::Phi { r } => {
            // T_r is (T_r + 1) − 1; the idempotent correction lives in the completion
            let t = &rep.crossing(r, f) - f;
            let tf = ev.gamma(&t, v);
            let fv = ev.gamma(f, v);
            let c = if v[r] == v[r + 1] {
                TruncSeries::one(ev.ctx())
            } else {
                let x1 = ev.x_image(v, r + 1);
                let d = &x1 - &ev.x_image(v, r);
                let one_q = &TruncSeries::one(ev.ctx()) - ev.qq();
                &(&one_q * &x1) * &d.invert()?
            };
            &tf + &(&c * &fv)
        }
        _ => {
            let e = g.event().expect("diagram generator");
            let out = rep.event(&e, f)?;
            ev.gamma(&out, v)
        }
    })
}

/// Check `γ_p(g·F) = γ(g)·γ_p(F)` on every component, for every generator and probe.
pub fn check_intertwine<S: Scalar>(cfg: &IsoConfig<S>, gens: &[Generator], opts: &IsoOpts) -> Result<IsoReport, IsoError> {
    let ctx = cfg.ctx()?;
    let (hf, kf) = cfg.kind.families();
    let hrep = HeckeRep::new(hf, &cfg.hecke)?;
    let krep = KlrRep::new(kf, &cfg.klr)?;
    let mut ev = Evaluator::new(cfg)?;
    let comps = cfg.components();
    let probes = hecke_probes::<S>(ctx, opts.probe_box);
    let images: BTreeMap<Vec<usize>, Vec<TruncSeries<S>>> =
        comps.iter().map(|u| (u.clone(), probes.iter().map(|f| ev.gamma(f, u)).collect())).collect();
    let bump = &TruncSeries::one(ctx) + &TruncSeries::h(ctx);
    let family = family_name(cfg);

    let mut records = Vec::new();
    for g in gens {
        let mut by_target: BTreeMap<Vec<usize>, Vec<Term<S>>> = BTreeMap::new();
        let mut failed: BTreeMap<Vec<usize>, String> = BTreeMap::new();
        for u in &comps {
            match gamma_gen(cfg, &ev, g, u) {
                Ok(terms) => {
                    for mut t in terms {
                        if opts.perturb && t.event.is_some() {
                            t.coef = &t.coef * &bump;
                        }
                        by_target.entry(t.target.clone()).or_default().push(t);
                    }
                }
                Err(e) => {
                    failed.insert(u.clone(), e.to_string());
                }
            }
        }
        for v in &comps {
            let mut context = json!({"component": labels_json(v)});
            if let Some(msg) = failed.get(v) {
                context["error"] = json!(msg);
                records.push(IsoRecord {
                    generator: g.name(),
                    family: family.clone(),
                    context,
                    status: Status::Fail,
                    certified_degree: 0,
                    convention: cfg.convention(),
                    unit_constant_term: None,
                    counterexample: Some(json!({"error": msg})),
                });
                continue;
            }
            let terms = by_target.get(v).map(|t| t.as_slice()).unwrap_or(&[]);
            let main = terms.iter().find(|t| t.event.is_some()).or(terms.first());
            let unit = main.map(|t| t.coef.constant_term().to_wire());
            let all_units = terms.iter().all(|t| t.coef.is_unit());
            let mut cert = ctx.cutoff();
            let mut counter = None;
            for (p, f) in probes.iter().enumerate() {
                let lhs = hecke_side(&mut ev, &hrep, g, f, v)?;
                let mut rhs = TruncSeries::zero(ctx);
                for t in terms {
                    let src = &images[&t.source][p];
                    let moved = match &t.event {
                        Some(e) => {
                            let mut lab = t.source.clone();
                            krep.event(e, &mut lab, src)?
                        }
                        None => src.clone(),
                    };
                    rhs = &rhs + &(&t.coef * &moved);
                }
                cert = cert.min(lhs.prec()).min(rhs.prec());
                if counter.is_none() {
                    if let Some(d) = ModVal::first_difference(&lhs, &rhs) {
                        counter = Some(json!({"probe": f.to_string(), "difference": d}));
                    }
                }
            }
            if !all_units {
                context["nonUnitCoefficient"] = json!(true);
            }
            records.push(IsoRecord {
                generator: g.name(),
                family: family.clone(),
                context,
                status: if counter.is_none() && all_units { Status::Pass } else { Status::Fail },
                certified_degree: cert,
                convention: cfg.convention(),
                unit_constant_term: unit,
                counterexample: counter,
            });
        }
    }
    Ok(IsoReport { family, header: header(cfg), records })
}

/// `γ_p^{-1}∘γ_p = id` on completed probes, and `γ_p` agrees with direct evaluation.
pub fn check_gamma_inverse<S: Scalar>(cfg: &IsoConfig<S>, probe_box: i16) -> Result<IsoReport, IsoError> {
    let ctx = cfg.ctx()?;
    let mut ev = Evaluator::new(cfg)?;
    let probes = hecke_probes::<S>(ctx, probe_box);
    let mut records = Vec::new();
    for u in cfg.components() {
        let label = ComponentLabel { b: Vec::new(), u: Some(u.clone()), nu: Vec::new() };
        let mut cert = ctx.cutoff();
        let mut counter = None;
        for f in &probes {
            let c = complete(cfg, f, &u);
            let v = ModuleVec::single(label.clone(), c.clone());
            let g = gamma_p(cfg, &v)?;
            let gv = g.get(&label).cloned().unwrap_or_else(|| TruncSeries::zero(ctx));
            let back = gamma_p_inv(cfg, &g)?;
            let bv = back.get(&label).cloned().unwrap_or_else(|| TruncSeries::zero(ctx));
            let direct = ev.gamma(f, &u);
            cert = cert.min(gv.prec()).min(bv.prec());
            if counter.is_none() {
                if let Some(d) = ModVal::first_difference(&gv, &direct) {
                    counter = Some(json!({"probe": f.to_string(), "gamma_p vs evaluation": d}));
                } else if let Some(d) = ModVal::first_difference(&bv, &c) {
                    counter = Some(json!({"probe": f.to_string(), "round trip": d}));
                }
            }
        }
        records.push(IsoRecord {
            generator: "gamma_p_inv . gamma_p".into(),
            family: family_name(cfg),
            context: json!({"component": labels_json(&u)}),
            status: if counter.is_none() { Status::Pass } else { Status::Fail },
            certified_degree: cert,
            convention: cfg.convention(),
            unit_constant_term: None,
            counterexample: counter,
        });
    }
    Ok(IsoReport { family: family_name(cfg), header: header(cfg), records })
}
