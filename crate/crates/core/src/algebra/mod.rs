//! Finite-field and dense linear-algebra substrate.
//!
//! Everything here is immutable after construction and every operation is a
//! pure function, so values can be shared freely across threads.

pub mod field;
pub mod matrix;
pub mod subspace;

pub use field::{FieldElem, FieldError, FieldSpec};
pub use matrix::{Matrix, MatrixError};
pub use subspace::{Subspace, SubspaceError};
