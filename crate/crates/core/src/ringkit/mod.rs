//! Exact polynomial carriers: truncated series, Laurent polynomials, permutations.

pub mod ctx;
pub mod perm;
pub mod series;
pub mod unis;
pub mod xpoly;

use thiserror::Error;

pub use ctx::{Mono, VarCtx, MAX_STRANDS, MAX_VARS};
pub use perm::Perm;
pub use series::TruncSeries;
pub use unis::UniSeries;
pub use xpoly::{XEval, XMono, XPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("context mismatch: {0} vs {1}")]
    CtxMismatch(VarCtx, VarCtx),
    #[error("series is not a unit")]
    NotAUnit,
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("unsupported denominator {0}")]
    UnsupportedDenominator(String),
    #[error("substitution argument has a nonzero constant term")]
    NonZeroConstant,
    #[error("certified degree exhausted")]
    PrecisionUnderflow,
    #[error("bad context: {0}")]
    BadContext(String),
    #[error("parse error: {0}")]
    Parse(String),
}
