use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("vectors are not linearly independent")]
    NotIndependent,
    #[error("the chosen complement is not a splitting")]
    NotASplitting,
    #[error("structure constants are not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFails(usize, usize, usize),
    #[error("subspace is not closed under the bracket: [{0}, {1}] leaves it")]
    NotSubalgebra(usize, usize),
    #[error("representation is not flat on basis pair ({0}, {1})")]
    NotFlat(usize, usize),
    #[error("connection does not extend the A-module structure at basis vector {0}")]
    NotExtending(usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("cochain of degree {0} is not closed")]
    NotCocycle(usize),
    #[error("unsupported cochain degree {0}")]
    UnsupportedDegree(usize),
    #[error("matched pair condition fails: {0}")]
    NotMatched(String),
    #[error("map is not a Lie algebra morphism: {0}")]
    NotMorphism(String),
    #[error("inconsistent internal state: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
