//! Monodromy of branched covers of curves, computed combinatorially from
//! permutation data and numerically from explicit equations, plus clump
//! iteration for correspondences of rational maps.

pub mod perm;
pub mod cover;
pub mod analytic;
pub mod clump;
pub mod cli;
