//! The nilHecke idempotent and the Young-subgroup symmetrizers.

use serde_json::{json, Value};

use crate::diagramkit::Family;
use crate::paramkit::Params;
use crate::repkit::check::hecke_probes;
use crate::repkit::{HeckeRep, ModVal};
use crate::ringkit::{Mono, Perm, TruncSeries, VarCtx, XPoly};
use crate::scalar::Scalar;

use super::IsoError;

/// The outcome of one operator identity checked on probes.
#[derive(Clone, Debug)]
pub struct OpCheck {
    pub name: String,
    pub pass: bool,
    pub probes: usize,
    pub certified_degree: u32,
    pub counterexample: Option<String>,
}

impl OpCheck {
    fn run<V, I, F>(name: impl Into<String>, probes: I, mut eq: F) -> Result<OpCheck, IsoError>
    where
        I: IntoIterator<Item = V>,
        V: std::fmt::Display,
        F: FnMut(&V) -> Result<(u32, Option<String>), IsoError>,
    {
        let mut count = 0;
        let mut cert = u32::MAX;
        let mut counter = None;
        for p in probes {
            count += 1;
            let (c, diff) = eq(&p)?;
            cert = cert.min(c);
            if counter.is_none() {
                counter = diff.map(|d| format!("probe {p}: {d}"));
            }
        }
        Ok(OpCheck { name: name.into(), pass: counter.is_none(), probes: count, certified_degree: cert, counterexample: counter })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.name,
            "status": if self.pass { "PASS" } else { "FAIL" },
            "probes": self.probes,
            "certifiedDegree": self.certified_degree,
            "counterexample": self.counterexample,
        })
    }
}

fn compare<S: Scalar, V: ModVal<S>>(a: &V, b: &V) -> (u32, Option<String>) {
    (a.prec().min(b.prec()), a.first_difference(b))
}

/// A second reduced word for the same permutation, by one braid or commutation move.
pub fn alternate_word(word: &[usize]) -> Option<Vec<usize>> {
    for i in 0..word.len().saturating_sub(2) {
        let (a, b, c) = (word[i], word[i + 1], word[i + 2]);
        if a == c && a.abs_diff(b) == 1 {
            let mut w = word.to_vec();
            w[i..i + 3].copy_from_slice(&[b, a, b]);
            return Some(w);
        }
    }
    for i in 0..word.len().saturating_sub(1) {
        if word[i].abs_diff(word[i + 1]) >= 2 {
            let mut w = word.to_vec();
            w.swap(i, i + 1);
            return Some(w);
        }
    }
    None
}

/// `E = y_1^{k−1} y_2^{k−2} ⋯ y_{k−1} ∘ ∂_{w_0}` on `k` strands.
#[derive(Clone, Debug)]
pub struct NilHeckeIdem {
    pub k: usize,
    pub ctx: VarCtx,
    /// Reduced word used for `∂_{w_0}`.
    pub word: Vec<usize>,
}

/// Precision of the power series the nilHecke checks run at.
const NILHECKE_CUTOFF: u32 = 12;

pub fn nilhecke_idem(k: usize) -> Result<NilHeckeIdem, IsoError> {
    if k == 0 {
        return Err(IsoError::Config("k must be at least 1".into()));
    }
    let ctx = VarCtx::new(k, 0, NILHECKE_CUTOFF)?;
    let w0 = Perm::from_vec((0..k).rev().collect()).expect("longest element");
    Ok(NilHeckeIdem { k, ctx, word: w0.reduced_word() })
}

impl NilHeckeIdem {
    pub fn demazure_word<S: Scalar>(&self, word: &[usize], f: &TruncSeries<S>) -> Result<TruncSeries<S>, IsoError> {
        let mut g = f.clone();
        for &r in word.iter().rev() {
            g = g.demazure(r)?;
        }
        Ok(g)
    }

    fn staircase(&self) -> Mono {
        let mut e = vec![0u8; self.ctx.nvars()];
        for i in 0..self.k - 1 {
            e[self.ctx.y(i)] = (self.k - 1 - i) as u8;
        }
        Mono::from_exps(&e)
    }

    pub fn apply<S: Scalar>(&self, f: &TruncSeries<S>) -> Result<TruncSeries<S>, IsoError> {
        Ok(self.demazure_word(&self.word, f)?.mul_mono(&self.staircase()))
    }

    /// Monomials in the `y` of total degree at most 4.
    pub fn probes<S: Scalar>(&self) -> Vec<TruncSeries<S>> {
        let mut out = vec![vec![0u8; self.ctx.nvars()]];
        for i in 0..self.k {
            out = out
                .into_iter()
                .flat_map(|e| {
                    let used: u32 = e.iter().map(|&x| x as u32).sum();
                    (0..=4 - used as u8).map(move |d| {
                        let mut e = e.clone();
                        e[i] = d;
                        e
                    })
                })
                .collect();
        }
        out.iter().map(|e| TruncSeries::monomial(self.ctx, Mono::from_exps(e), S::one())).collect()
    }

    pub fn check<S: Scalar>(&self) -> Result<Vec<OpCheck>, IsoError> {
        let probes = self.probes::<S>();
        let mut out = vec![OpCheck::run(format!("E∘E = E (k={})", self.k), probes.iter(), |f| {
            let once = self.apply(f)?;
            Ok(compare::<S, _>(&self.apply(&once)?, &once))
        })?];
        if let Some(alt) = alternate_word(&self.word) {
            out.push(OpCheck::run(format!("∂_w0 word independence (k={})", self.k), probes.iter(), |f| {
                Ok(compare::<S, _>(&self.demazure_word(&self.word, f)?, &self.demazure_word(&alt, f)?))
            })?);
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymSign {
    Plus,
    Minus,
}

impl SymSign {
    pub fn name(self) -> &'static str {
        match self {
            SymSign::Plus => "plus",
            SymSign::Minus => "minus",
        }
    }
}

/// `ε_𝐤 = Σ_{w ∈ S_𝐤} T_w`, or `ε⁻_𝐤 = Σ (−𝗊)^{−ℓ(w)} T_w`, in the signed representation.
pub struct Symmetrizer<S: Scalar> {
    pub k: Vec<usize>,
    pub sign: SymSign,
    rep: HeckeRep<S>,
    terms: Vec<(Vec<usize>, TruncSeries<S>)>,
}

pub fn symmetrizer<S: Scalar>(params: &Params<S>, k: &[usize], sign: SymSign) -> Result<Symmetrizer<S>, IsoError> {
    let n: usize = k.iter().sum();
    if n == 0 || k.contains(&0) {
        return Err(IsoError::Config("the composition must have positive parts".into()));
    }
    let params = params.clone().with_n(n);
    let rep = HeckeRep::new(Family::HeckeOMinus, &params)?;
    let ctx = params.ctx()?;
    let step = match sign {
        SymSign::Plus => TruncSeries::one(ctx),
        SymSign::Minus => rep.qq().neg_ref().invert()?,
    };
    let terms = Perm::young_subgroup(k).into_iter().map(|w| (w.reduced_word(), step.pow(w.length() as u32))).collect();
    Ok(Symmetrizer { k: k.to_vec(), sign, rep, terms })
}

impl<S: Scalar> Symmetrizer<S> {
    pub fn ctx(&self) -> VarCtx {
        *self.rep.qq().ctx()
    }

    /// `T_r = (X_r − 𝗊X_{r+1})∂_r − 1`.
    pub fn t(&self, r: usize, f: &XPoly<S>) -> XPoly<S> {
        &self.rep.crossing(r, f) - f
    }

    pub fn t_word(&self, word: &[usize], f: &XPoly<S>) -> XPoly<S> {
        word.iter().rev().fold(f.clone(), |g, &r| self.t(r, &g))
    }

    pub fn apply(&self, f: &XPoly<S>) -> XPoly<S> {
        let mut acc = XPoly::zero(self.ctx());
        for (word, c) in &self.terms {
            acc = &acc + &self.t_word(word, f).scale(c);
        }
        acc
    }

    /// Simple reflections inside the Young subgroup.
    pub fn generators(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut start = 0;
        for &size in &self.k {
            out.extend(start..start + size - 1);
            start += size;
        }
        out
    }

    pub fn check(&self) -> Result<Vec<OpCheck>, IsoError> {
        let probes = hecke_probes::<S>(self.ctx(), 1);
        let applied: Vec<(XPoly<S>, XPoly<S>)> = probes.iter().map(|f| (f.clone(), self.apply(f))).collect();
        let kname: Vec<String> = self.k.iter().map(|x| x.to_string()).collect();
        let kname = kname.join(",");
        let mut out = Vec::new();
        for r in self.generators() {
            let (name, ev) = match self.sign {
                SymSign::Plus => (format!("(T{} − q)ε = 0, k=({kname})", r + 1), self.rep.qq().clone()),
                SymSign::Minus => (format!("(T{} + 1)ε⁻ = 0, k=({kname})", r + 1), TruncSeries::from_i64(self.ctx(), -1)),
            };
            out.push(OpCheck::run(name, applied.iter().map(|(f, e)| Wrap(f, e)), |Wrap(_, e)| {
                let lhs = self.t(r, e);
                Ok(compare::<S, _>(&lhs, &e.scale(&ev)))
            })?);
        }
        let alts: Vec<(Vec<usize>, Vec<usize>)> =
            self.terms.iter().filter_map(|(w, _)| alternate_word(w).map(|a| (w.clone(), a))).collect();
        if !alts.is_empty() {
            out.push(OpCheck::run(format!("T_w word independence, k=({kname})"), probes.iter(), |f| {
                let mut worst = (u32::MAX, None);
                for (w, a) in &alts {
                    let (c, d) = compare::<S, _>(&self.t_word(w, f), &self.t_word(a, f));
                    worst.0 = worst.0.min(c);
                    if worst.1.is_none() {
                        worst.1 = d.map(|d| format!("{w:?} vs {a:?}: {d}"));
                    }
                }
                Ok(worst)
            })?);
        }
        Ok(out)
    }
}

/// A probe paired with its image, displayed as the probe.
struct Wrap<'a, S: Scalar>(&'a XPoly<S>, &'a XPoly<S>);

impl<S: Scalar> std::fmt::Display for Wrap<'_, S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternate_words() {
        assert_eq!(alternate_word(&[0, 1, 0]), Some(vec![1, 0, 1]));
        assert_eq!(alternate_word(&[0, 2]), Some(vec![2, 0]));
        assert_eq!(alternate_word(&[0, 1]), None);
    }
}
