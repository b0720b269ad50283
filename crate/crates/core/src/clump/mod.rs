//! Clumps of a correspondence `P¹ ← P¹ → P¹`: the sets `F_i(z)` obtained
//! from `{z}` by repeatedly taking full fibers of either leg. A clump larger
//! than `deg α_X · deg α_W` rules out a common quotient of the two legs.

mod cloud;
mod iterate;
mod point;

pub use cloud::{Margins, PointCloud};
pub use iterate::{
    clump_iterate, core_verdict, core_verdict_from, image, preimages, random_starts, ClumpOptions, ClumpReport,
    CoreVerdict, Correspondence, CorrespondenceJson, Verdict, DEFAULT_MAX_POINTS, DEFAULT_TOLERANCE, SAMPLE_RADIUS,
};
pub use point::ProjPoint;

use thiserror::Error;

use crate::analytic::NumericError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClumpError {
    #[error("cloud grew to {size} points, over the cap of {cap}")]
    CloudExplosion { size: usize, cap: usize },
    #[error("invalid correspondence: {0}")]
    InvalidCorrespondence(String),
    #[error("{0}")]
    Precondition(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error(transparent)]
    Root(#[from] NumericError),
}
