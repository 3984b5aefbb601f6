//! Polynomial representations of all nine diagram families and the relation checker.
//!
//! A diagram acts on the component named by its bottom loading and lands in the
//! component named by its top loading. Hecke-side families act on Laurent
//! polynomials ([`XPoly`]); KLR-side families act on truncated series in `y, h, z`.

pub mod check;
pub mod dictionary;
pub mod hecke;
pub mod klr;
pub mod module;
pub mod rank;

use thiserror::Error;

use crate::diagramkit::{DiagError, DiagExpr, Diagram, Family};
use crate::paramkit::ParamError;
use crate::ringkit::{RingError, TruncSeries, VarCtx, XPoly};
use crate::scalar::{Rational, Scalar};

pub use check::{
    check_instance, check_relation, hecke_probes, klr_probes, mutate, run_suite, run_suite_with, InstanceReport, Mutation, Status,
    SuiteOpts, SuiteReport,
};
pub use dictionary::{check_dictionary_type_o, DictionaryReport};
pub use hecke::{CrossingMode, HeckeRep};
pub use klr::KlrRep;
pub use module::{ComponentLabel, ModVal, ModuleVec};
pub use rank::{basis_rank, rank_of_rows};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("diagram family {0} does not act on this module ({1})")]
    WrongFamily(Family, Family),
    #[error("event {0} has no action here")]
    NoAction(String),
    #[error(transparent)]
    Diag(#[from] DiagError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// A polynomial representation of one diagram family.
pub trait Rep<S: Scalar>: Sync {
    type V: ModVal<S>;

    fn family(&self) -> Family;
    fn ctx(&self) -> VarCtx;
    /// Red line positions seen by this family (empty without reds).
    fn thetas(&self) -> &[Rational];

    /// The action of `d` on a value of its bottom component.
    fn apply(&self, d: &Diagram, v: &Self::V) -> Result<Self::V, RepError>;

    /// The action of a linear combination of diagrams with common boundary.
    fn apply_expr(&self, e: &DiagExpr<S>, v: &Self::V) -> Result<Self::V, RepError> {
        let mut acc = v.zero_like();
        for (c, d) in &e.terms {
            acc = acc.add(&self.apply(d, v)?.scale(c));
        }
        Ok(acc)
    }

    /// The action on a module vector: components not matching `d.bottom` are killed.
    fn apply_vec(&self, d: &Diagram, v: &ModuleVec<Self::V>) -> Result<ModuleVec<Self::V>, RepError> {
        let from = ComponentLabel::of_loading(&d.bottom, self.thetas());
        let to = ComponentLabel::of_loading(&d.top, self.thetas());
        let mut out = ModuleVec::new();
        if let Some(x) = v.get(&from) {
            out.insert(to, self.apply(d, x)?);
        }
        Ok(out)
    }
}

/// The representation of a Hecke-side or KLR-side family, as the checker sees it.
pub enum AnyRep<S: Scalar> {
    Hecke(HeckeRep<S>),
    Klr(KlrRep<S>),
}

impl<S: Scalar> AnyRep<S> {
    pub fn for_family(family: Family, params: &crate::paramkit::Params<S>) -> Result<Self, RepError> {
        Ok(if family.is_klr() {
            AnyRep::Klr(KlrRep::new(family, params)?)
        } else {
            AnyRep::Hecke(HeckeRep::new(family, params)?)
        })
    }
}

/// Shorthand for a Hecke-side module value.
pub type HVal<S> = XPoly<S>;
/// Shorthand for a KLR-side module value.
pub type KVal<S> = TruncSeries<S>;
