//! Computing with finite bounded lattices and canonical quasimodules over
//! them: subquasimodule lattices, the orthogonality Galois connection,
//! closed and splitting subquasimodules, bases, and an exhaustive
//! verification harness with counterexample search.

pub mod bitset;
pub mod error;
pub mod formats;
pub mod galois;
pub mod lattice;
pub mod quasimodule;
pub mod subquasi;

pub use bitset::{ElemSet, VecSet};
pub use error::{Error, Result};
pub use lattice::{builtin, Ideal, Lattice};
pub use quasimodule::{verify_axioms, CanonicalQm, RawQm, Vector};
pub mod verify;
