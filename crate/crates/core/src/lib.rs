//! Pebbling games, pebbling formulas and the algebraic proof systems that
//! refute them: exact prices, degree deciders, translations between
//! strategies and refutations, and verifiers for every proof format.

pub mod algebra;
pub mod decide;
pub mod formulas;
pub mod graphs;
pub mod json;
pub mod pebbling;
pub mod proofs;
pub mod report;
pub mod translate;

pub use algebra::{FieldSpec, Monomial, Polynomial, Scalar, DEFAULT_PRIME};
pub use formulas::{pebbling_formula, pebbling_system, CnfFormula, PolySystem};
pub use graphs::{Dag, Vertex};
pub use pebbling::{GameVariant, PebblingStrategy, SearchOptions};
pub use proofs::{Derivation, InputMcRefutation, Measures, NsCertificate, ProofSystem};
