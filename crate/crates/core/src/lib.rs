//! Simultaneous similarity and orthogonal/unitary similarity of matrix tuples.
//!
//! Tuples are compared through trace-word fingerprints (fast necessary
//! checks) and decided through intertwiner spaces: an invertible `P` with
//! `P·X_i = Y_i·P` certifies similarity, and one that also intertwines the
//! starred tuples yields an orthogonal (unitary) witness `O = H⁻¹·P` with
//! `H` the positive square root of `P·P*`.

pub mod corpus;
pub mod error;
pub mod exec;
pub mod intertwiner;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod orthogonal;
pub mod scalar;
pub mod sylvester;
pub mod units;
pub mod words;

pub use error::{Error, Result};
pub use exec::Execution;
pub use matrix::{Matrix, MatrixTuple};
pub use scalar::{Complex, FieldKind, Rational, Scalar, ScalarKind, StarMode};
