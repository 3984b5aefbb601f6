//! Diagrams as words of local events, formal linear combinations, relation
//! registries and grading.

pub mod basis;
pub mod build;
pub mod grading;
pub mod registry;

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::paramkit::{Dir, Loading, ParamError};
use crate::ringkit::{RingError, TruncSeries, VarCtx};
use crate::scalar::{Rational, Scalar};

pub use basis::{d_w, enumerate_basis, BasisElem};
pub use build::{Decor, Keyframes};
pub use grading::{grading, grading_expr};
pub use registry::{registry, RelInstance, Relation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagError {
    #[error("family mismatch: {0} vs {1}")]
    FamilyMismatch(Family, Family),
    #[error("event {0} is not allowed in family {1}")]
    EventNotAllowed(String, Family),
    #[error("event {0} refers to a strand or red line that does not exist")]
    BadIndex(String),
    #[error("red crossing {0} does not match the strand positions")]
    BadRedCrossing(String),
    #[error("expression is not homogeneous")]
    NotHomogeneous,
    #[error("no generic perturbation found for {0}")]
    NoPerturbation(String),
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// The nine diagram families: four on the Hecke side, four on the KLR side, plus
/// the two ordinary Hecke conventions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    HeckeOPlus,
    HeckeOMinus,
    Waha,
    FHecke,
    WfHecke,
    Klr,
    Wklr,
    TLambda,
    WfKlr,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::HeckeOPlus,
        Family::HeckeOMinus,
        Family::Waha,
        Family::FHecke,
        Family::WfHecke,
        Family::Klr,
        Family::Wklr,
        Family::TLambda,
        Family::WfKlr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::HeckeOPlus => "HECKE_O_PLUS",
            Family::HeckeOMinus => "HECKE_O_MINUS",
            Family::Waha => "WAHA",
            Family::FHecke => "F_HECKE",
            Family::WfHecke => "WF_HECKE",
            Family::Klr => "KLR",
            Family::Wklr => "WKLR",
            Family::TLambda => "T_LAMBDA",
            Family::WfKlr => "WF_KLR",
        }
    }

    /// Accepts the canonical names case-insensitively, plus a few short aliases.
    pub fn parse(s: &str) -> Option<Family> {
        let t = s.trim().to_ascii_uppercase().replace('-', "_");
        let f = match t.as_str() {
            "HECKE_O_PLUS" | "O_PLUS" | "HECKE_PLUS" => Family::HeckeOPlus,
            "HECKE_O_MINUS" | "O_MINUS" | "HECKE_MINUS" | "HECKE" => Family::HeckeOMinus,
            "WAHA" | "W_HECKE" => Family::Waha,
            "F_HECKE" | "FHECKE" => Family::FHecke,
            "WF_HECKE" | "WFHECKE" => Family::WfHecke,
            "KLR" => Family::Klr,
            "WKLR" | "W_KLR" => Family::Wklr,
            "T_LAMBDA" | "TLAMBDA" | "F_KLR" => Family::TLambda,
            "WF_KLR" | "WFKLR" => Family::WfKlr,
            _ => return None,
        };
        Some(f)
    }

    pub fn is_klr(self) -> bool {
        matches!(self, Family::Klr | Family::Wklr | Family::TLambda | Family::WfKlr)
    }

    pub fn has_ghosts(self) -> bool {
        matches!(self, Family::Waha | Family::WfHecke | Family::Wklr | Family::WfKlr)
    }

    pub fn has_reds(self) -> bool {
        matches!(self, Family::FHecke | Family::WfHecke | Family::TLambda | Family::WfKlr)
    }

    /// The partner family under the completed isomorphism.
    pub fn partner(self) -> Family {
        match self {
            Family::HeckeOPlus | Family::HeckeOMinus => Family::Klr,
            Family::Waha => Family::Wklr,
            Family::FHecke => Family::TLambda,
            Family::WfHecke => Family::WfKlr,
            Family::Klr => Family::HeckeOMinus,
            Family::Wklr => Family::Waha,
            Family::TLambda => Family::FHecke,
            Family::WfKlr => Family::WfHecke,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One local event of a diagram, read bottom to top. Indices are 0-based
/// positions at the moment of the event (1-based on the wire).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    /// Strands at positions `i` and `i+1` cross.
    SS(usize),
    /// The strand at position `i` crosses the ghost of the strand at position `j`.
    SG { i: usize, j: usize, dir: Dir },
    /// The strand at position `i` crosses red line `j` (ordered by position).
    SR { i: usize, j: usize, dir: Dir },
    /// KLR dot on strand `i`.
    Dot(usize),
    /// Hecke square `X_i^{±1}`.
    Sq(usize, i8),
}

fn dir_wire(d: Dir) -> &'static str {
    match d {
        Dir::LeftToRight => "LR",
        Dir::RightToLeft => "RL",
    }
}

fn dir_parse(v: &Value) -> Result<Dir, DiagError> {
    match v.as_str() {
        Some("LR") => Ok(Dir::LeftToRight),
        Some("RL") => Ok(Dir::RightToLeft),
        _ => Err(DiagError::Malformed(format!("bad direction {v}"))),
    }
}

impl Event {
    pub fn to_json(&self) -> Value {
        match self {
            Event::SS(i) => json!({"kind": "SS", "i": i + 1}),
            Event::SG { i, j, dir } => json!({"kind": "SG", "i": i + 1, "j": j + 1, "dir": dir_wire(*dir)}),
            Event::SR { i, j, dir } => json!({"kind": "SR", "i": i + 1, "j": j + 1, "dir": dir_wire(*dir)}),
            Event::Dot(i) => json!({"kind": "DOT", "i": i + 1}),
            Event::Sq(i, e) => json!({"kind": "SQ", "i": i + 1, "e": e}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Event, DiagError> {
        let bad = || DiagError::Malformed(format!("bad event {v}"));
        let idx = |k: &str| -> Result<usize, DiagError> {
            let x = v.get(k).and_then(Value::as_u64).ok_or_else(bad)?;
            if x == 0 {
                return Err(bad());
            }
            Ok(x as usize - 1)
        };
        let kind = v.get("kind").and_then(Value::as_str).ok_or_else(bad)?;
        Ok(match kind {
            "SS" => Event::SS(idx("i")?),
            "SG" => Event::SG { i: idx("i")?, j: idx("j")?, dir: dir_parse(v.get("dir").ok_or_else(bad)?)? },
            "SR" => Event::SR { i: idx("i")?, j: idx("j")?, dir: dir_parse(v.get("dir").ok_or_else(bad)?)? },
            "DOT" => Event::Dot(idx("i")?),
            "SQ" => {
                let e = v.get("e").and_then(Value::as_i64).ok_or_else(bad)?;
                if e != 1 && e != -1 {
                    return Err(bad());
                }
                Event::Sq(idx("i")?, e as i8)
            }
            _ => return Err(bad()),
        })
    }

    fn allowed_in(&self, f: Family) -> bool {
        match self {
            Event::SS(_) => true,
            Event::SG { .. } => f.has_ghosts(),
            Event::SR { .. } => f.has_reds(),
            Event::Dot(_) => f.is_klr(),
            Event::Sq(..) => !f.is_klr(),
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = |d: &Dir| if *d == Dir::LeftToRight { "→" } else { "←" };
        match self {
            Event::SS(i) => write!(f, "SS{}", i + 1),
            Event::SG { i, j, dir } => write!(f, "SG({}{}g{})", i + 1, d(dir), j + 1),
            Event::SR { i, j, dir } => write!(f, "SR({}{}r{})", i + 1, d(dir), j + 1),
            Event::Dot(i) => write!(f, "y{}", i + 1),
            Event::Sq(i, e) => write!(f, "X{}^{}", i + 1, e),
        }
    }
}

/// A diagram: boundary loadings and the event word from bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    pub family: Family,
    pub bottom: Loading,
    pub top: Loading,
    pub events: Vec<Event>,
}

/// Number of black strands left of each red line.
pub fn nu_of(positions: &[Rational], thetas: &[Rational]) -> Vec<usize> {
    thetas.iter().map(|t| positions.iter().filter(|x| *x < t).count()).collect()
}

impl Diagram {
    /// The identity diagram on a loading.
    pub fn identity(family: Family, l: Loading) -> Diagram {
        Diagram { family, bottom: l.clone(), top: l, events: Vec::new() }
    }

    /// A word whose top loading keeps the bottom positions, with labels moved along
    /// the strand crossings. Red crossings are not allowed here since they move
    /// strands across red lines.
    pub fn from_word(family: Family, bottom: Loading, events: Vec<Event>) -> Result<Diagram, DiagError> {
        let n = bottom.len();
        let mut labels = bottom.labels().map(|l| l.to_vec());
        for e in &events {
            if !e.allowed_in(family) {
                return Err(DiagError::EventNotAllowed(e.to_string(), family));
            }
            match e {
                Event::SS(i) => {
                    if i + 1 >= n {
                        return Err(DiagError::BadIndex(e.to_string()));
                    }
                    if let Some(l) = labels.as_mut() {
                        l.swap(*i, i + 1);
                    }
                }
                Event::SR { .. } => return Err(DiagError::Malformed("from_word takes no red crossings".into())),
                _ => {}
            }
        }
        let top = Loading::new(bottom.positions().to_vec(), labels)?;
        let d = Diagram { family, bottom, top, events };
        d.validate(&[])?;
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.bottom.len()
    }

    /// Replay the word and check indices, label transport and red-line bookkeeping.
    pub fn validate(&self, thetas: &[Rational]) -> Result<(), DiagError> {
        let n = self.n();
        if self.top.len() != n {
            return Err(DiagError::Malformed("top and bottom strand counts differ".into()));
        }
        if self.bottom.labels().is_some() != self.family.is_klr() || self.top.labels().is_some() != self.family.is_klr() {
            return Err(DiagError::Malformed("labels are required exactly on the KLR side".into()));
        }
        let mut labels = self.bottom.labels().map(|l| l.to_vec());
        let mut nu = nu_of(self.bottom.positions(), thetas);
        for e in &self.events {
            if !e.allowed_in(self.family) {
                return Err(DiagError::EventNotAllowed(e.to_string(), self.family));
            }
            let bad = || DiagError::BadIndex(e.to_string());
            match e {
                Event::SS(i) => {
                    if i + 1 >= n {
                        return Err(bad());
                    }
                    if let Some(l) = labels.as_mut() {
                        l.swap(*i, i + 1);
                    }
                }
                Event::SG { i, j, .. } => {
                    if *i >= n || *j >= n || i == j {
                        return Err(bad());
                    }
                }
                Event::SR { i, j, dir } => {
                    if *i >= n || *j >= nu.len() {
                        return Err(bad());
                    }
                    match dir {
                        Dir::LeftToRight if nu[*j] == i + 1 => nu[*j] -= 1,
                        Dir::RightToLeft if nu[*j] == *i => nu[*j] += 1,
                        _ => return Err(DiagError::BadRedCrossing(e.to_string())),
                    }
                }
                Event::Dot(i) | Event::Sq(i, _) => {
                    if *i >= n {
                        return Err(bad());
                    }
                }
            }
        }
        if labels.as_deref() != self.top.labels() {
            return Err(DiagError::Malformed("top labels do not match the transported bottom labels".into()));
        }
        if nu != nu_of(self.top.positions(), thetas) {
            return Err(DiagError::Malformed("top loading disagrees with the red crossings".into()));
        }
        Ok(())
    }

    /// Vertical composition: `self` on top of `below`. `None` is the zero diagram
    /// (mismatched boundary).
    pub fn compose(&self, below: &Diagram) -> Result<Option<Diagram>, DiagError> {
        if self.family != below.family {
            return Err(DiagError::FamilyMismatch(self.family, below.family));
        }
        if self.bottom != below.top {
            return Ok(None);
        }
        let mut events = below.events.clone();
        events.extend(self.events.iter().cloned());
        Ok(Some(Diagram { family: self.family, bottom: below.bottom.clone(), top: self.top.clone(), events }))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.name(),
            "bottom": loading_json(&self.bottom),
            "top": loading_json(&self.top),
            "events": self.events.iter().map(Event::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Diagram, DiagError> {
        let bad = |m: &str| DiagError::Malformed(m.to_string());
        let family = v
            .get("family")
            .and_then(Value::as_str)
            .and_then(Family::parse)
            .ok_or_else(|| bad("missing or unknown family"))?;
        let bottom = loading_from_json(v.get("bottom").ok_or_else(|| bad("missing bottom"))?)?;
        let top = loading_from_json(v.get("top").ok_or_else(|| bad("missing top"))?)?;
        let events = v
            .get("events")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing events"))?
            .iter()
            .map(Event::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Diagram { family, bottom, top, events })
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.events.is_empty() {
            return write!(f, "1");
        }
        let w: Vec<String> = self.events.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", w.join("·"))
    }
}

fn loading_json(l: &Loading) -> Value {
    json!({
        "positions": l.positions().iter().map(|x| x.to_wire()).collect::<Vec<_>>(),
        "labels": l.labels().map(|u| u.iter().map(|i| i + 1).collect::<Vec<_>>()),
    })
}

fn loading_from_json(v: &Value) -> Result<Loading, DiagError> {
    let bad = || DiagError::Malformed(format!("bad loading {v}"));
    let positions = v
        .get("positions")
        .and_then(Value::as_array)
        .ok_or_else(bad)?
        .iter()
        .map(|p| match p {
            Value::String(s) => Rational::parse_wire(s).map_err(|_| bad()),
            Value::Number(n) if n.is_i64() => Ok(Rational::from_i64(n.as_i64().unwrap())),
            _ => Err(bad()),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let labels = match v.get("labels") {
        None | Some(Value::Null) => None,
        Some(Value::Array(a)) => {
            // 1-based on the wire, like strand indices
            Some(a.iter().map(|x| x.as_u64().filter(|&k| k > 0).map(|k| k as usize - 1).ok_or_else(bad)).collect::<Result<Vec<_>, _>>()?)
        }
        _ => return Err(bad()),
    };
    Ok(Loading::new(positions, labels)?)
}

/// A finite linear combination of diagrams with coefficients in `k[[h, z]]`.
/// The empty sum is the zero element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagExpr<S: Scalar> {
    pub terms: Vec<(TruncSeries<S>, Diagram)>,
}

impl<S: Scalar> DiagExpr<S> {
    pub fn zero() -> Self {
        DiagExpr { terms: Vec::new() }
    }

    pub fn single(ctx: VarCtx, d: Diagram) -> Self {
        DiagExpr { terms: vec![(TruncSeries::one(ctx), d)] }
    }

    pub fn term(c: TruncSeries<S>, d: Diagram) -> Self {
        DiagExpr { terms: vec![(c, d)] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.is_zero())
    }

    pub fn push(&mut self, c: TruncSeries<S>, d: Diagram) {
        self.terms.push((c, d));
    }

    pub fn plus(mut self, o: DiagExpr<S>) -> Self {
        self.terms.extend(o.terms);
        self
    }

    pub fn scale(&self, k: &TruncSeries<S>) -> Self {
        DiagExpr { terms: self.terms.iter().map(|(c, d)| (c * k, d.clone())).collect() }
    }

    pub fn neg(&self) -> Self {
        DiagExpr { terms: self.terms.iter().map(|(c, d)| (-c, d.clone())).collect() }
    }

    /// Product `self · below`, dropping pairs with mismatched boundaries.
    pub fn compose(&self, below: &DiagExpr<S>) -> Result<Self, DiagError> {
        let mut out = Vec::new();
        for (ca, da) in &self.terms {
            for (cb, db) in &below.terms {
                if let Some(d) = da.compose(db)? {
                    out.push((ca * cb, d));
                }
            }
        }
        Ok(DiagExpr { terms: out })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(c, d)| json!({"coef": c.to_json(), "diagram": d.to_json()})).collect())
    }

    pub fn from_json(ctx: VarCtx, v: &Value) -> Result<Self, DiagError> {
        let arr = v.as_array().ok_or_else(|| DiagError::Malformed("expression must be an array".into()))?;
        let mut terms = Vec::new();
        for t in arr {
            let c = match t.get("coef") {
                None => TruncSeries::one(ctx),
                Some(c) => TruncSeries::from_json(ctx, c)?,
            };
            let d = Diagram::from_json(t.get("diagram").ok_or_else(|| DiagError::Malformed("term without diagram".into()))?)?;
            terms.push((c, d));
        }
        Ok(DiagExpr { terms })
    }
}

impl<S: Scalar> fmt::Display for DiagExpr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, d)| format!("({c})·[{d}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
