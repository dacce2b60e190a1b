//! Exact secondary Hochschild and secondary cyclic (co)homology of algebra
//! triples `(A, B, ε)`.

pub mod error;
pub mod classical;
pub mod complexes;
pub mod connes;
pub mod field;
pub mod homology;
pub mod linalg;
pub mod remarks;
pub mod simplicial;
pub mod sparse;
pub mod structure;
pub mod suites;
pub mod tensor;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rational, Rationals};
pub use sparse::{SparseMatrix, SparseVec};
