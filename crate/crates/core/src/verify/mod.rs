//! Invariants that certify a construction: rational homology,
//! orientability, link-level manifold evidence, and isomorphism.

mod homology;
mod iso;
mod manifold;
mod orient;

pub use homology::{betti_numbers, boundary_matrix, BettiVector, BoundaryMatrix};
pub use iso::{are_isomorphic, IsoWitness};
pub use manifold::{manifold_evidence, LinkEvidence, ManifoldEvidence};
pub use orient::{orientability, orientation_signs, BundleType};
pub(crate) use orient::ridge_sign;
