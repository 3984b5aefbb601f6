//! Parameter data: spectrum graph, series choices, loadings, red lines, steadiness.

pub mod config;
pub mod geometry;
pub mod graph;
pub mod loading;
pub mod series_choice;
pub mod steady;

use thiserror::Error;

use crate::ringkit::RingError;

pub use config::{parse_field, Conventions, Params, RawConfig};
pub use geometry::{count_intersections, geometry_events, sweep, Dir, GeomEvent, GeomKind, SweepOpts};
pub use graph::ParamGraph;
pub use loading::{seq_swap, Loading, RedData, RedLine, Weighting};
pub use series_choice::{BChoice, DChoice, SeriesChoice};
pub use steady::unsteady;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("invalid q = {0} (must avoid 0 and 1)")]
    InvalidQ(String),
    #[error("spectrum contains zero")]
    ZeroLabel,
    #[error("duplicate spectrum entry {0}")]
    DuplicateSpectrum(String),
    #[error("series choice: {0}")]
    Series(String),
    #[error("loading: {0}")]
    Loading(String),
    #[error("red data: {0}")]
    Reds(String),
    #[error("kappa must be nonzero")]
    Kappa,
    #[error("index {0} out of range")]
    Index(usize),
    #[error("tangency at t={t}, x={x}")]
    Tangency { t: String, x: String },
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}
