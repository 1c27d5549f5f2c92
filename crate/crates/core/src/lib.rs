//! Exact computations with Lie algebra connections: Bott connections, Atiyah cocycles
//! and classes, Atiyah extensions and their isomorphisms, matched pairs, equivariant
//! structures and invariant connections on homogeneous spaces.
//!
//! Everything is a Lie algebra (a Lie algebroid over a point) with exact rational
//! structure constants; every identity is checked with zero tolerance.

// Index loops mirror the summation indices of the formulas.
#![allow(clippy::needless_range_loop)]

pub mod atiyah;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod extension;
pub mod fixtures;
pub mod homogeneous;
pub mod lie;
pub mod linalg;
pub mod matched;
pub mod selftest;

pub use error::{Error, Result};
pub use linalg::Scalar;
