//! Exact geometry of numbers over totally real number fields.
//!
//! The crate computes with *adelic polytopes*: products of one global
//! finitely generated module over the ring of integers (standing for all
//! finite places at once) with one convex polytope per real embedding.
//! Everything is exact — field elements are rational vectors in the power
//! basis, geometric predicates are resolved by certified sign computation,
//! volumes are carried as explicitly constructed field elements, and lattice
//! point counts come from complete branch-and-bound enumeration.
//!
//! Modules:
//! - [`numberfield`] — monogenic field arithmetic, certified real embeddings,
//!   exact sign determination.
//! - [`omodule`] — finitely generated submodules of `K^n` as rank-`nd`
//!   integer lattices: membership, index, intersection, box enumeration.
//! - [`realgeom`] — exact convex hulls, membership, volumes and placing
//!   triangulations at a single real place.
//! - [`adelic`] — assembled adelic bodies: volumes under two measure
//!   conventions, lattice point counting, dilation, lifted triangulations.
//! - [`bounds`] — Blichfeldt/Henze/Gaudron-type inequality verifiers.
//! - [`gallery`] — bundled demonstration bodies used by the CLI.
//!
//! With the default `parallel` feature, enumeration, dilation sweeps and
//! batch verification distribute over a rayon pool; disabling the feature
//! yields a sequential build with identical (deterministically ordered)
//! results.

pub mod adelic;
pub mod bounds;
mod exec;
pub mod gallery;
mod linalg;
pub mod numberfield;
pub mod omodule;
pub mod realgeom;

pub use adelic::{
    adelic_hull, adelic_sym_hull, cross_polytope_volume, growth_experiment, AdelicPolytope,
    MeasureConvention, Volume,
};
pub use bounds::{laguerre, BoundReport};
pub use numberfield::{FieldElement, Interval, NumberField};
pub use omodule::{KPoint, OModule};
pub use realgeom::{PlacePolytope, SimplexSet};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("minimal polynomial must be monic with integer coefficients and degree >= 1")]
    InvalidMinPoly,
    #[error("minimal polynomial is not squarefree")]
    NonSquarefree,
    #[error("minimal polynomial is reducible over Q")]
    Reducible,
    #[error("irreducibility is not verified for degree {0} > 4; opt in with assume_irreducible")]
    IrreducibilityUnverified(usize),
    #[error("operation requires a totally real field, but the signature has {0} complex pairs")]
    NotTotallyReal(usize),
    #[error("operation requires the class-number-one assertion on the field")]
    ClassNumberNotOne,
    #[error("operands belong to different number fields")]
    FieldMismatch,
    #[error("place index {place} out of range: field has {count} real places")]
    PlaceOutOfRange { place: usize, count: usize },
    #[error("points do not span: {0}")]
    NonSpanning(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("enumeration candidate cap {0} exceeded")]
    CandidateCap(usize),
    #[error("dilation factor must be positive")]
    NonPositiveDilation,
    #[error("intersection is empty or lower-dimensional at place {0}")]
    ThinIntersection(usize),
    #[error("{bound}: hypothesis violated: {detail}")]
    HypothesisViolated { bound: String, detail: String },
    #[error("certified comparison did not resolve at width {0}")]
    ComparisonUnresolved(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
