//! Exact verification of extended affine Lie algebra axioms.
//!
//! Algebras are presented through canonical homogeneous bases of their graded
//! pieces. Infinite-dimensional examples are inspected on finite windows of the
//! grading lattice, with brackets and spans computed exactly over Q.

pub mod algebra;
pub mod axioms;
pub mod cli;
pub mod constructions;
pub mod decomp;
pub mod ears;
pub mod error;
pub mod exact_arith;
pub mod finroot;
pub mod linalg;
pub mod matlie;
pub mod quantum_torus;

pub use error::{Error, Result};
