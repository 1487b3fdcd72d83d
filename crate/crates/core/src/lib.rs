//! Finite-field laboratory for vector MDS codes with bandwidth-optimal,
//! optimal-access node repair: exact linear algebra over GF(p^m), the
//! systematic block-code model, repair schemes and their checks,
//! sub-packetization lower bounds, audits of the counting machinery behind
//! them, constructors for bound-achieving codes, and a brute-force scheme
//! search oracle.

pub mod algebra;
pub mod analysis;
pub mod bounds;
pub mod code;
pub mod construction;
pub mod format;
pub mod repair;
pub mod search;

pub use algebra::{FieldElem, FieldError, FieldSpec, Matrix, MatrixError, Subspace, SubspaceError};
pub use code::{CodeError, CodeParams, CodeSpec, Codeword, MdsReport, Message};
pub use repair::{CombinationMap, RepairError, RepairMatrix, RepairScheme, SchemeMode};
