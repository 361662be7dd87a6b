//! Exact computations for semigroup rings of graded rational cones.
//!
//! Starting from a graded cone and a configuration of degree-one lattice
//! points, the crate builds a regular triangulation, decomposes the lattice
//! points of the cone (and of its interior) into translated simplicial
//! semigroups indexed by box points, reads off the `S` and `T` polynomials,
//! and certifies that explicit linear forms `Z_1, ..., Z_r` form a regular
//! sequence with quotients of graded dimension `S(t)` and `T(t)`, paired
//! non-degenerately. Stringy E-polynomials are assembled from the `S`
//! polynomials of local cones.
//!
//! All arithmetic is exact; infinitesimal perturbations are symbolic.

pub mod cli;
pub mod combinatorics;
pub mod cone;
pub mod decomposition;
pub mod exactmath;
pub mod pairing;
pub mod quotient;
pub mod series;
pub mod stringy;
pub mod triangulation;

pub use cone::{GradedCone, LatticePoint, ValidationReport};
pub use decomposition::{BoxDecomposition, GenericDirection, Sign};
pub use exactmath::{EpsNumber, RatMatrix, Rational};
pub use series::GradedPolynomial;
pub use triangulation::{Heights, Simplex, Triangulation};

use exactmath::LinAlgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("cone fails validation: {0}")]
    InvalidCone(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("points do not span the ambient space")]
    DegenerateConfiguration,
    #[error("heights are not strictly convex: {0}")]
    NotStrictlyConvex(String),
    #[error("triangulation check failed: {0}")]
    InvalidTriangulation(String),
    #[error("point lies outside the cone")]
    PointOutsideCone,
    #[error("point is not in any simplex cone")]
    NotInAnySimplex,
    #[error("point lies on a wall for a perturbed location; direction is not generic")]
    AmbiguousLocation,
    #[error("direction is not generic: {0}")]
    NonGenericDirection(String),
    #[error("point {0} is not in the domain of the decomposition")]
    PointNotInDomain(String),
    #[error("coefficients are not generic: {0}")]
    NonGenericCoefficients(String),
    #[error("quotient presentation is not certified: {0}")]
    PresentationNotCertified(String),
    #[error("{what}: retries exhausted after {attempts} attempts (seed {seed}): {last}")]
    RetriesExhausted { what: &'static str, seed: u64, attempts: usize, last: String },
}
