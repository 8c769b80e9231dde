//! Exact computation with the Kauffman bracket skein module of the
//! connected sum of two copies of S^1 x S^2.
//!
//! The module is presented over Z[A,A^{-1}] by three generators a1, a2, a3
//! and two doubly-indexed families of handle-sliding relators. This crate
//! expands those relators in closed form, cross-checks them against the
//! defining recurrences, reduces elements against indexed relator sets,
//! and emits machine-checkable certificates for torsion membership and
//! the breadth-descent non-splitting argument.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error("breadth is undefined for the zero polynomial")]
    BreadthUndefined,
    #[error("evaluation point reduces to zero")]
    ZeroSpecialization,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{what}({m},{n}) is outside the defined parameter range")]
    OutOfRange { what: &'static str, m: i64, n: i64 },
    #[error("relator parameters (m={m}, n={n}, q={q}) out of range: m and q must be nonnegative")]
    BadRelatorParams { m: i64, n: i64, q: i64 },
    #[error("duplicate leading monomial in relator index: {0}")]
    DuplicateLead(String),
    #[error("element is not supported on powers of a1 alone")]
    NotA1Line,
    #[error("certificate check failed: {0}")]
    CertificateInvalid(String),
    #[error("descent verification failed: {0}")]
    DescentInvalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub mod checks;
pub mod elements;
pub mod laurent;
pub mod obstruction;
pub mod reduction;
pub mod relators;
pub mod torsion;
pub mod wire;

pub use elements::{Basis, MonomialIndex, SkeinElement};
pub use laurent::LaurentPoly;
pub use relators::{Family, Relator, SequenceCache};
