//! The completed isomorphisms between the Hecke-type and KLR-type families.
//!
//! Everything is certified through the polynomial representations: a Laurent
//! polynomial `F` on the Hecke side is sent, on the component with labels `u`, to
//! `F(u_1 b(y_1), …, u_n b(y_n))`, and each generator image is checked against
//! the Hecke action on probes.
//!
//! For the types without ghosts (O and F) the KLR side is built on the inverse
//! graph: its crossing picks up `y_{r+1} − y_r + h` when the labels on top satisfy
//! `u_r = q·u_{r+1}`, which is the orientation the ghost picture induces.

use serde_json::{json, Value};

use crate::diagramkit::{DiagError, Family};
use crate::paramkit::{DChoice, ParamError, Params};
use crate::repkit::RepError;
use crate::ringkit::{RingError, VarCtx};
use crate::scalar::Scalar;

mod cyclo;
mod gamma;
mod intertwine;
mod schur;

pub use cyclo::{cyclo_correspondence, violating_generator_check, CycloReport, ViolatingReport};
pub use gamma::{a_coeff, a_coeff_tagged, complete, gamma_p, gamma_p_inv, subst_y, ACoeff, ACase, Evaluator};
pub use intertwine::{
    check_gamma_inverse, check_intertwine, default_generators, gamma_gen, Generator, IsoOpts, IsoRecord, IsoReport, Term,
};
pub use schur::{alternate_word, nilhecke_idem, symmetrizer, NilHeckeIdem, OpCheck, Symmetrizer, SymSign};

#[derive(Debug, thiserror::Error)]
pub enum IsoError {
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Diag(#[from] DiagError),
    #[error(transparent)]
    Ring(RingError),
}

impl From<RingError> for IsoError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::NotDivisible(s) => IsoError::NotDivisible(s),
            RingError::UnsupportedDenominator(s) => IsoError::NotDivisible(format!("denominator {s}")),
            e => IsoError::Ring(e),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsoType {
    O,
    W,
    F,
    Wf,
}

impl IsoType {
    pub const ALL: [IsoType; 4] = [IsoType::O, IsoType::W, IsoType::F, IsoType::Wf];

    pub fn name(self) -> &'static str {
        match self {
            IsoType::O => "O",
            IsoType::W => "W",
            IsoType::F => "F",
            IsoType::Wf => "WF",
        }
    }

    pub fn parse(s: &str) -> Option<IsoType> {
        match s.to_ascii_uppercase().as_str() {
            "O" => Some(IsoType::O),
            "W" => Some(IsoType::W),
            "F" => Some(IsoType::F),
            "WF" => Some(IsoType::Wf),
            _ => None,
        }
    }

    /// `(Hecke side, KLR side)`.
    pub fn families(self) -> (Family, Family) {
        match self {
            IsoType::O => (Family::HeckeOMinus, Family::Klr),
            IsoType::W => (Family::Waha, Family::Wklr),
            IsoType::F => (Family::FHecke, Family::TLambda),
            IsoType::Wf => (Family::WfHecke, Family::WfKlr),
        }
    }

    pub fn has_ghosts(self) -> bool {
        matches!(self, IsoType::W | IsoType::Wf)
    }

    pub fn has_reds(self) -> bool {
        matches!(self, IsoType::F | IsoType::Wf)
    }
}

/// Parameters for both sides of an isomorphism.
#[derive(Clone, Debug)]
pub struct IsoConfig<S: Scalar> {
    pub kind: IsoType,
    pub hecke: Params<S>,
    pub klr: Params<S>,
}

impl<S: Scalar> IsoConfig<S> {
    pub fn new(kind: IsoType, params: &Params<S>) -> Result<Self, IsoError> {
        params.series.validate()?;
        if kind.has_ghosts() && params.kappa.is_none() {
            return Err(IsoError::Config(format!("type {} needs κ", kind.name())));
        }
        if kind.has_reds() && params.reds.is_empty() {
            return Err(IsoError::Config(format!("type {} needs at least one red line", kind.name())));
        }
        let mut hecke = params.clone();
        if !kind.has_reds() {
            hecke.reds = Default::default();
        }
        let mut klr = hecke.clone();
        // the undeformed Hecke side (d = 1) matches the KLR algebra at h = 0
        klr.conv.klr_h = params.series.d == DChoice::Exp;
        if !kind.has_ghosts() {
            klr.graph = params.graph.inverse();
        }
        Ok(IsoConfig { kind, hecke, klr })
    }

    pub fn ctx(&self) -> Result<VarCtx, IsoError> {
        Ok(self.hecke.ctx()?)
    }

    pub fn n(&self) -> usize {
        self.hecke.n
    }

    pub fn sigma(&self) -> i64 {
        self.hecke.conv.sigma
    }

    pub fn sign(&self) -> i64 {
        self.klr.conv.klr_sign
    }

    pub fn convention(&self) -> Value {
        json!({"sigma": self.sigma(), "sign": self.sign()})
    }

    /// All label sequences in `U^n` (as label indices), lexicographically.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let m = self.hecke.graph.len();
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..self.n() {
            out = out.into_iter().flat_map(|v| (0..m).map(move |a| [v.clone(), vec![a]].concat())).collect();
        }
        out
    }

    pub fn label(&self, i: usize) -> &S {
        self.hecke.graph.label(i)
    }
}
