//! Exact invariants of log pairs fibered over the projective line.
//!
//! Everything is computed in `Q` or a real quadratic field: Zariski
//! decompositions along rays, S- and beta-invariants and their walls, GIT
//! stability of bidegree forms, log canonical thresholds of curve germs against
//! a fiber, canonical bundle formula degrees and the combinatorics of nodal base
//! curves.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod basecurve;
pub mod cbf;
pub mod fujita;
pub mod git;
pub mod lattice;
pub mod lct;
pub mod models;
pub mod poly;
pub mod scalar;
pub mod zariski;

pub use scalar::{compare, parse_scalar, quad_roots, AlgebraicScalar, QuadExt, Rational, Scalar, ScalarError};
