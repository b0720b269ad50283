//! Branched covers described by monodromy: a base genus, a tuple of handle
//! permutations and one permutation per branch point.
//!
//! The surface relation is `[a₁,b₁]⋯[a_g,b_g]·σ₁⋯σ_r = id` with products read
//! left to right in stored order. Producers of reps (the tracker, the random
//! generators, tensor products) all emit data in that convention.

mod coset;
mod galois;
mod genus;
mod product;
mod random;
mod rep;

pub use coset::{
    build_base_p1_rep, build_hw, complementary_genus, coset_action_cover, ComplementaryReport, HwSubgroup,
};
pub use galois::{classify_galois, galois_report, GaloisClass, GaloisReport};
pub use genus::{classify_ramification, genus_of, rh_genus, RamificationCase};
pub use product::{
    analyze, diagonal_component, fiber_square_over_p1, local_law_holds, local_law_prediction, pair_product,
    tensor_perm, tensor_product,
    Component, CoverAnalysis, DiagonalEmbedding, RamificationProfile,
};
pub use random::{random_cover, random_generic_p1_pair, random_perm, SEARCH_BUDGET};
pub use rep::{validate, BranchPoint, MonodromyRep, RepJson, Validation};

use thiserror::Error;

use crate::perm::PermError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("surface relation fails: product is {product}")]
    RelationViolation { product: String },
    #[error("degree mismatch: rep has degree {expected}, {what} has degree {found}")]
    DegreeMismatch { what: String, expected: usize, found: usize },
    #[error("base genus {base_genus} needs {expected} handle permutations, got {found}")]
    HandleCount { base_genus: usize, expected: usize, found: usize },
    #[error("cover is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("Riemann-Hurwitz gives odd 2g-2 = {two_g_minus_two}")]
    NonIntegerGenus { two_g_minus_two: i64 },
    #[error("Riemann-Hurwitz gives negative genus {genus}")]
    NegativeGenus { genus: i64 },
    #[error("not a genus-2 cover of a genus-1 curve: {0}")]
    NotAGenus2OverGenus1Cover(String),
    #[error("diagonal component does not restrict to the input rep: {0}")]
    DiagonalNotInvariant(String),
    #[error("pair action at {label} breaks the gcd/lcm law")]
    LocalLawViolation { label: String },
    #[error("branch labels cannot be merged consistently: {0}")]
    BranchLabelMismatch(String),
    #[error("generator {0} is not in the monodromy group")]
    NotASubgroup(String),
    #[error("monodromy group has order {order}, expected 2*{n}! = {expected}")]
    NonGenericGaloisGroup { n: usize, order: String, expected: String },
    #[error("no solution found in {trials} trials")]
    SearchExhausted { trials: u64 },
    #[error("{0}")]
    Precondition(String),
}
