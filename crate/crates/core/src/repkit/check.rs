//! The relation checker: both sides of every relation instance applied to a probe set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::diagramkit::registry::{instances, qhecke_instances};
use crate::diagramkit::{Diagram, Event, Family, RelInstance};
use crate::paramkit::Params;
use crate::ringkit::{Mono, TruncSeries, VarCtx, XMono, XPoly};
use crate::scalar::Scalar;

use super::{CrossingMode, HeckeRep, KlrRep, ModVal, Rep, RepError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug)]
pub struct InstanceReport {
    pub id: String,
    pub relation: String,
    pub context: Value,
    pub status: Status,
    pub certified_degree: u32,
    pub probe_count: usize,
    pub counterexample: Option<Value>,
}

impl InstanceReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "id": self.id,
            "relation": self.relation,
            "context": self.context,
            "status": self.status.as_str(),
            "certifiedDegree": self.certified_degree,
            "probeCount": self.probe_count,
        });
        if let Some(c) = &self.counterexample {
            v["counterexample"] = c.clone();
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub family: Family,
    pub header: Value,
    pub records: Vec<InstanceReport>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn failures(&self) -> Vec<&InstanceReport> {
        self.records.iter().filter(|r| r.status == Status::Fail).collect()
    }

    pub fn summary(&self) -> Value {
        json!({
            "summary": true,
            "family": self.family.name(),
            "instances": self.records.len(),
            "failed": self.failures().len(),
            "status": if self.all_pass() { "PASS" } else { "FAIL" },
            "conventions": self.header,
        })
    }

    /// One JSON object per instance, then the summary object.
    pub fn to_jsonl(&self) -> String {
        crate::report::jsonl(self.records.iter().map(|r| r.to_json()), self.summary())
    }
}

/// A deliberate corruption of one relation instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct SuiteOpts {
    /// Hecke-side exponent box `A`: probes `X^a`, `a ∈ [−A, A]^n`.
    pub probe_box: i16,
    /// Crossing operator for Hecke-side families; `None` is the family default.
    pub mode: Option<CrossingMode>,
    /// Check the `T − 𝗊` relations instead of the family's own.
    pub qhecke: bool,
    pub mutation: Option<Mutation>,
    /// Restrict to these instance ids.
    pub only: Option<Vec<String>>,
}

impl Default for SuiteOpts {
    fn default() -> Self {
        SuiteOpts { probe_box: 2, mode: None, qhecke: false, mutation: None, only: None }
    }
}

/// All Laurent monomials with exponents in `[−a, a]^n`.
pub fn hecke_probes<S: Scalar>(ctx: VarCtx, a: i16) -> Vec<XPoly<S>> {
    let mut exps: Vec<Vec<i16>> = vec![Vec::new()];
    for _ in 0..ctx.n() {
        exps = exps.into_iter().flat_map(|v| (-a..=a).map(move |e| [v.clone(), vec![e]].concat())).collect();
    }
    exps.into_iter().map(|e| XPoly::from_mono(ctx, XMono::from_exps(&e))).collect()
}

/// All `y`-monomials of total degree at most `N − 2` (at least the constant).
pub fn klr_probes<S: Scalar>(ctx: VarCtx) -> Vec<TruncSeries<S>> {
    let top = ctx.cutoff().saturating_sub(2);
    let mut exps: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..ctx.n() {
        exps = exps
            .into_iter()
            .flat_map(|v| {
                let used: u32 = v.iter().map(|&x| x as u32).sum();
                (0..=(top - used) as u8).map(move |e| [v.clone(), vec![e]].concat())
            })
            .collect();
    }
    exps.into_iter()
        .map(|e| {
            let mut all = vec![0u8; ctx.nvars()];
            for (i, x) in e.iter().enumerate() {
                all[ctx.y(i)] = *x;
            }
            TruncSeries::monomial(ctx, Mono::from_exps(&all), S::one())
        })
        .collect()
}

/// Apply both sides of `inst` to every probe.
pub fn check_instance<S: Scalar, R: Rep<S>>(rep: &R, inst: &RelInstance<S>, probes: &[R::V]) -> Result<InstanceReport, RepError> {
    let mut cert = rep.ctx().cutoff();
    let mut counter = None;
    for p in probes {
        let l = rep.apply_expr(&inst.lhs, p)?;
        let r = rep.apply_expr(&inst.rhs, p)?;
        cert = cert.min(ModVal::prec(&l)).min(ModVal::prec(&r));
        if counter.is_none() {
            if let Some(d) = l.first_difference(&r) {
                counter = Some(json!({"probe": p.to_string(), "difference": d, "lhs": l.to_string(), "rhs": r.to_string()}));
            }
        }
    }
    Ok(InstanceReport {
        id: inst.id.clone(),
        relation: inst.relation.to_string(),
        context: inst.context.clone(),
        status: if counter.is_some() { Status::Fail } else { Status::Pass },
        certified_degree: cert,
        probe_count: probes.len(),
        counterexample: counter,
    })
}

/// Check a list of instances in parallel; output keeps the input order.
pub fn check_relation<S: Scalar, R: Rep<S>>(
    rep: &R,
    insts: &[RelInstance<S>],
    probes: &[R::V],
) -> Result<Vec<InstanceReport>, RepError> {
    insts.par_iter().map(|i| check_instance(rep, i, probes)).collect()
}

fn decorated_identity(d: &Diagram, strand: usize) -> Diagram {
    let ev = if d.family.is_klr() { Event::Dot(strand) } else { Event::Sq(strand, 1) };
    Diagram { events: vec![ev], ..Diagram::identity(d.family, d.bottom.clone()) }
}

/// Corrupt the right-hand side of `inst`, deterministically in `seed`.
///
/// The added term is always an injective operator (a scaled identity, a dot or
/// square, or a crossing-free term of the relation itself), so the corrupted
/// relation is false whenever the original holds.
pub fn mutate<S: Scalar>(inst: &RelInstance<S>, ctx: VarCtx, m: Mutation) -> RelInstance<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(m.seed);
    let bottom = inst.lhs.terms.first().or(inst.rhs.terms.first()).map(|t| t.1.clone()).expect("nonempty relation");
    let c = TruncSeries::from_i64(ctx, rng.gen_range(1..=2));
    let kind = rng.gen_range(0..3);
    let crossing_free: Vec<usize> = inst
        .rhs
        .terms
        .iter()
        .enumerate()
        .filter(|(_, (_, d))| !d.events.iter().any(|e| matches!(e, Event::SS(_))))
        .map(|(k, _)| k)
        .collect();
    let mut rhs = inst.rhs.clone();
    let what = match kind {
        2 if !crossing_free.is_empty() => {
            let k = crossing_free[rng.gen_range(0..crossing_free.len())];
            let (coef, d) = rhs.terms[k].clone();
            rhs.push(&coef * &c, d);
            format!("coefficient of rhs term {} scaled by 1 + {}", k + 1, rng_value(&c))
        }
        1 | 2 => {
            let s = rng.gen_range(0..bottom.n());
            rhs.push(c.clone(), decorated_identity(&bottom, s));
            format!("added {} times a decoration on strand {}", rng_value(&c), s + 1)
        }
        _ => {
            rhs.push(c.clone(), Diagram::identity(bottom.family, bottom.bottom.clone()));
            format!("added {} times the identity", rng_value(&c))
        }
    };
    let mut context = inst.context.clone();
    context["mutation"] = json!({"seed": m.seed, "change": what});
    RelInstance { relation: inst.relation, id: inst.id.clone(), context, lhs: inst.lhs.clone(), rhs }
}

fn rng_value<S: Scalar>(c: &TruncSeries<S>) -> String {
    c.constant_term().to_wire()
}

/// Index of the instance a mutation with this seed targets.
pub fn mutation_target(seed: u64, count: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    rng.gen_range(0..count)
}

fn select<S: Scalar>(mut insts: Vec<RelInstance<S>>, ctx: VarCtx, opts: &SuiteOpts) -> Vec<RelInstance<S>> {
    if let Some(m) = opts.mutation {
        if !insts.is_empty() {
            let t = mutation_target(m.seed, insts.len());
            insts[t] = mutate(&insts[t], ctx, m);
        }
    }
    if let Some(only) = &opts.only {
        insts.retain(|i| only.contains(&i.id));
    }
    insts
}

/// Instantiate every relation of `family` and check it.
pub fn run_suite_with<S: Scalar>(family: Family, params: &Params<S>, opts: &SuiteOpts) -> Result<SuiteReport, RepError> {
    let ctx = params.ctx()?;
    let insts = if opts.qhecke { qhecke_instances(family, params)? } else { instances(family, params)? };
    let insts = select(insts, ctx, opts);
    let mut header = json!({
        "klrSign": params.conv.klr_sign,
        "klrH": params.conv.klr_h,
        "sigma": params.conv.sigma,
        "n": params.n,
        "order": params.order,
        "kappa": params.kappa.as_ref().map(|k| k.kappa().to_wire()),
    });
    let records = if family.is_klr() {
        let rep = KlrRep::new(family, params)?;
        check_relation(&rep, &insts, &klr_probes(ctx))?
    } else {
        let mut rep = HeckeRep::new(family, params)?;
        if let Some(m) = opts.mode {
            rep = rep.with_mode(m);
        }
        header["crossing"] = json!(rep.mode().name());
        check_relation(&rep, &insts, &hecke_probes(ctx, opts.probe_box))?
    };
    Ok(SuiteReport { family, header, records })
}

pub fn run_suite<S: Scalar>(family: Family, params: &Params<S>) -> Result<SuiteReport, RepError> {
    run_suite_with(family, params, &SuiteOpts::default())
}
