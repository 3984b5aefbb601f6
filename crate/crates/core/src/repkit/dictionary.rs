//! Which Hecke generator a crossing stands for.
//!
//! The ordinary crossing is checked against the quadratic and braid relations for
//! `T + 1` and for `T − 𝗊`, in both polynomial representations. The weighted
//! crossing (ghost, strand, ghost) is compared operator by operator with each of
//! the four ordinary crossing operators, for both signs of `κ`.

use serde_json::{json, Value};

use crate::diagramkit::{d_w, Diagram, Family};
use crate::paramkit::{Loading, Params};
use crate::ringkit::{Perm, TruncSeries, XPoly};
use crate::scalar::{Rational, Scalar};

use super::check::{hecke_probes, run_suite_with, SuiteOpts};
use super::{CrossingMode, HeckeRep, ModVal, Rep, RepError};

#[derive(Clone, Debug)]
pub struct DictEntry {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Default)]
pub struct DictionaryReport {
    pub entries: Vec<DictEntry>,
}

impl DictionaryReport {
    pub fn get(&self, name: &str) -> Option<&DictEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn to_jsonl(&self) -> String {
        self.entries
            .iter()
            .map(|e| json!({"check": e.name, "status": if e.pass { "PASS" } else { "FAIL" }, "detail": e.detail}).to_string() + "\n")
            .collect()
    }
}

/// The weighted crossing of strands `r, r+1` on evenly spaced strands, spacing `2|κ|`.
pub fn waha_crossing(n: usize, r: usize, kappa: &Rational) -> Result<Diagram, RepError> {
    let gap = kappa.abs().mul_ref(&Rational::from_i64(2));
    let l = Loading::evenly_spaced(n, &gap, None);
    Ok(d_w(Family::Waha, &Perm::simple(n, r), &l, &l, Some(kappa), &[])?)
}

fn compare<S: Scalar>(a: &[XPoly<S>], b: &[XPoly<S>]) -> Option<String> {
    a.iter().zip(b).find_map(|(x, y)| x.first_difference(y))
}

/// Quadratic/braid checks for both conventions and the weighted-crossing dictionary.
pub fn check_dictionary_type_o<S: Scalar>(params: &Params<S>) -> Result<DictionaryReport, RepError> {
    let mut rep = DictionaryReport::default();
    let conventions = [
        ("T+1", false, [CrossingMode::MinusTPlusOne, CrossingMode::PlusTPlusOne]),
        ("T-q", true, [CrossingMode::MinusTMinusQ, CrossingMode::PlusTMinusQ]),
    ];
    for (conv, qhecke, modes) in conventions {
        for mode in modes {
            let opts = SuiteOpts { mode: Some(mode), qhecke, ..SuiteOpts::default() };
            let s = run_suite_with(Family::HeckeOMinus, params, &opts)?;
            rep.entries.push(DictEntry {
                name: format!("{conv} relations, {}", mode.name()),
                pass: s.all_pass(),
                detail: json!({"instances": s.records.len(), "failed": s.failures().iter().map(|f| f.id.clone()).collect::<Vec<_>>()}),
            });
        }
    }

    let ctx = params.ctx()?;
    let probes = hecke_probes::<S>(ctx, 2);
    let n = params.n;
    for kappa in [Rational::from_i64(-1), Rational::from_i64(1)] {
        let p = params.clone().with_kappa(kappa.clone())?;
        let waha = HeckeRep::new(Family::Waha, &p)?;
        let sign = if kappa.is_negative() { "kappa<0" } else { "kappa>0" };
        let mut images: Vec<Vec<XPoly<S>>> = Vec::new();
        for r in 0..n.saturating_sub(1) {
            let d = waha_crossing(n, r, &kappa)?;
            images.push(probes.iter().map(|f| waha.apply(&d, f)).collect::<Result<_, _>>()?);
        }
        let mut matches = Vec::new();
        for mode in &CrossingMode::ALL[..4] {
            let o = HeckeRep::new(Family::HeckeOMinus, &p)?.with_mode(*mode);
            let mut diff = None;
            for (r, img) in images.iter().enumerate() {
                let expect: Vec<XPoly<S>> = probes.iter().map(|f| o.crossing(r, f)).collect();
                if let Some(d) = compare(img, &expect) {
                    diff.get_or_insert(format!("s{}: {d}", r + 1));
                }
            }
            if diff.is_none() {
                matches.push(mode.name());
            }
        }
        let expected = if kappa.is_negative() { CrossingMode::MinusTPlusOne } else { CrossingMode::PlusTMinusQ };
        rep.entries.push(DictEntry {
            name: format!("weighted crossing, {sign}"),
            // at 𝗊 = −1 all four operators agree, so several matches are expected there
            pass: matches.contains(&expected.name()),
            detail: json!({"matches": matches, "expected": expected.name(), "degenerate": matches.len() > 1}),
        });

        // the weighted crossing squared: (1+𝗊)C for T+1, −(1+𝗊)C for T−𝗊
        let one_q = &TruncSeries::one(ctx) + waha.qq();
        let k = if kappa.is_negative() { one_q } else { -one_q };
        let mut diff = None;
        if n >= 2 {
            let d = waha_crossing(n, 0, &kappa)?;
            for f in &probes {
                let once = waha.apply(&d, f)?;
                let twice = waha.apply(&d, &once)?;
                if let Some(x) = twice.first_difference(&once.scale(&k)) {
                    diff.get_or_insert(x);
                }
            }
        }
        rep.entries.push(DictEntry {
            name: format!("weighted crossing quadratic, {sign}"),
            pass: diff.is_none(),
            detail: json!({"counterexample": diff}),
        });
    }
    Ok(rep)
}
