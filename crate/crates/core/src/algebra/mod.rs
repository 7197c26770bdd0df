//! Exact fields, multilinear polynomials and the linear algebra behind the
//! verifiers and degree deciders.

mod explicit;
mod field;
mod linalg;
mod monomial;
mod poly;

pub use explicit::{ExplicitPoly, PowerProduct};
pub use field::{FieldSpec, Scalar, DEFAULT_PRIME};
pub use linalg::{solve_linear, EchelonForm, MonomialIndexer, SpanBasis, SparseVec, DEFAULT_DIMENSION_CAP};
pub use monomial::{Monomial, MAX_VARS};
pub use poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("invalid field: {0}")]
    FieldSpecInvalid(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("scalar is not an element of {0}")]
    ScalarMismatch(FieldSpec),
    #[error("degree {degree} exceeds the basis bound {bound}")]
    DegreeExceeded { degree: usize, bound: usize },
    #[error("monomial basis dimension {dimension} exceeds the cap {cap}")]
    DimensionCapExceeded { dimension: usize, cap: usize },
    #[error("{0} variables exceed the supported maximum")]
    TooManyVariables(usize),
    #[error("parse error: {0}")]
    Parse(String),
}
