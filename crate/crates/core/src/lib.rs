//! Exact computer algebra for univariate rational functions over Q and
//! simple number fields Q[t]/(m(t)).
//!
//! The crate decomposes rational functions into indecomposable components,
//! computes fixing groups of Moebius units and their fixed fields, relates
//! subgroup chains to decomposition chains, and classifies the finite
//! subgroups of PGL2 that arise. All arithmetic is exact.
//!
//! Module map:
//! - [`numfield`]: Q and simple extensions, exact element arithmetic.
//! - [`poly`]: dense univariate polynomials and small exact linear algebra.
//! - [`factor`]: factorization and root finding over Q and Q(theta).
//! - [`ratfunc`]: rational functions, Moebius units, normal forms and
//!   decomposition (single step and complete chains).
//! - [`galois`]: fixing groups, fixed fields, subgroup lattices and the
//!   group/decomposition correspondence.
//! - [`parse`]: the expression and field-spec grammar used by the CLI.
//! - [`casebook`]: machine-checkable fixtures for the reference examples.

pub mod casebook;
pub mod error;
pub mod factor;
pub mod galois;
pub mod numfield;
pub mod parse;
pub mod poly;
pub mod ratfunc;

pub use error::{Error, Result};
pub use numfield::{BigRational, Field, FieldElement};
pub use poly::{Matrix, Polynomial};
pub use ratfunc::{Decomposition, DecompositionChain, MoebiusUnit, RationalFunction};
