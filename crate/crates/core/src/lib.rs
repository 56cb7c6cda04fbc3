//! Triangulations of sphere bundles over the circle.
//!
//! The crate builds stacked spheres along a fixed subdivision schedule,
//! glues two facets of a stacked sphere together (handle addition) to get
//! triangulations of `S^{n-2} x S^1` and of the nonorientable
//! `S^{n-2}`-bundle over the circle, and adds edges one at a time with
//! bistellar moves until the 1-skeleton is complete. Every construction can
//! be checked with face-vector identities, rational homology,
//! orientability, and combinatorial isomorphism.
//!
//! Complexes are pure and stored as facet lists; see [`Complex`].

pub mod bistellar;
pub mod complex;
pub mod error;
pub mod format;
pub mod handle;
pub mod stacked;
pub mod verify;

pub use complex::{Complex, FVector, Face, GVector, HVector, Vertex};
pub use error::{Error, Result};
pub use verify::BundleType;
