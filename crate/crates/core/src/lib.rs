//! Trace-based structure tests for finite sets of complex matrices.
//!
//! The crate computes the unital algebra generated by a matrix set, its
//! Jacobson radical and semi-simple defect, decides simultaneous
//! triangularizability by several independent trace criteria (plus a
//! constructive flag builder), checks Property L / Property kL, and tests
//! unital linear maps between matrix algebras for (k-)invertibility
//! preservation and homomorphism-modulo-radical behaviour.
//!
//! All arithmetic is double-precision complex. Every yes/no answer is a
//! [`Verdict`], which is `Indeterminate` when the deciding quantity lies
//! within a factor of ten of its threshold.

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod maps;
pub mod numerics;
pub mod property_l;
pub mod triangularization;

pub use algebra::{enumerate_words, generate_algebra, GeneratedAlgebra, MatrixSet, Word};
pub use error::{MatalgError, Result};
pub use maps::{LinearMatrixMap, MapReport};
pub use numerics::{Matrix, Polynomial, Scalar, ToleranceConfig, Verdict};
pub use property_l::{KLReport, Numbering};
pub use triangularization::{Criterion, TriangReport, Witness};
