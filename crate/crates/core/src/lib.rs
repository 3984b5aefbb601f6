//! Exact polynomial-representation checks for Hecke-type and KLR-type diagram algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`ringkit`]: scalars, truncated power series, Laurent polynomials, Demazure operators.
//! * [`paramkit`]: spectrum graphs, series choices, loadings, steadiness.
//! * [`diagramkit`]: diagrams as event words, composition, relation registries, grading.
//! * [`repkit`]: the polynomial representations and the relation checker.
//! * [`isokit`]: the completed isomorphisms and their certification.
//!
//! All algebra is generic over [`scalar::Scalar`]; the aliases below fix the two
//! fields the command-line tool ships with.

pub mod diagramkit;
pub mod isokit;
pub mod paramkit;
pub mod repkit;
pub mod report;
pub mod ringkit;
pub mod scalar;

pub use scalar::{Field, FieldKind, Fp, Rational, Scalar};

pub type SeriesQ = ringkit::TruncSeries<Rational>;
pub type XPolyQ = ringkit::XPoly<Rational>;
pub type F7 = Fp<7>;
pub type SeriesF7 = ringkit::TruncSeries<F7>;
