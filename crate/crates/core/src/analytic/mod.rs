//! Monodromy from explicit equations: a rational map `φ: P¹ → P¹` and a
//! double cover `y² = f(x)` over the same line. Branch points are found
//! from exact discriminants; permutations come from tracking fibers along
//! loops around them.

mod locus;
mod map;
mod model;
mod qpoly;
mod real;
mod roots;
mod track;

pub use locus::{branch_locus, phi_profile, BranchLocus, BranchValue, CANDIDATE_TOL, PROFILE_TOL};
pub use map::{RationalMap, RationalMapJson};
pub use model::{CoverModel, CoverModelJson, DEFAULT_PRECISION};
pub use qpoly::{parse_rational, resultant, t_discriminant, QPoly};
pub use real::{Big, Cx, Real};
pub use roots::{all_roots, cluster_roots, poly_roots, RootCluster, CLUSTER_TOL};
pub use track::{lift_loop, track_monodromy, track_monodromy_with, LoopKind, LoopRecord, TrackOptions, TrackResult};

use thiserror::Error;

use crate::cover::CoverError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericError {
    #[error("root finder did not converge after {iterations} iterations (worst residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },
    #[error("tracking collision on loop {label}: step fell below {min_step:e} at x = {at:?}")]
    TrackingCollision { label: String, min_step: f64, at: [f64; 2] },
    #[error("loop {label} does not close: end point {root} is {distance:e} from every start point (threshold {threshold:e})")]
    NonClosedLoop { label: String, root: usize, distance: f64, threshold: f64 },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("loop {label}: tracked cycle type {tracked} differs from fiber profile {expected}")]
    ProfileMismatch { label: String, tracked: String, expected: String },
    #[error("loop {label}: permutation {coarse} changes to {fine} under refinement")]
    RefinementMismatch { label: String, coarse: String, fine: String },
    #[error(transparent)]
    Cover(#[from] CoverError),
}
