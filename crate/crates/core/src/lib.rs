//! Exact computational homological algebra at desk scale.
//!
//! The crate models bounded chain complexes of finite-dimensional vector
//! spaces over an exact field (a prime field or the rationals), strict
//! representations of finite categories in such complexes, covariant and
//! contravariant Grothendieck constructions of bipartite diagrams of finite
//! categories, and the reflection functors that exchange representations of
//! the two constructions via mapping cones and fibres.
//!
//! Everything is exact: no floating point appears anywhere. All values are
//! immutable after construction and all operations are pure functions.

pub mod chain;
pub mod exactlin;
pub mod fincat;
pub mod groth;
pub mod reflect;
pub mod rep;
pub mod testkit;

pub use chain::{ChainComplex, ChainMap};
pub use exactlin::{Field, Matrix, Scalar};
pub use fincat::{FinCat, FinPoset, Functor};
pub use groth::{BipartiteDiagram, BipartiteQuiver, GrothCat};
pub use reflect::{TripleCa, TripleCoca};
pub use rep::{NatTrans, Representation};

/// A single reported problem found by one of the `validate_*` operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Where the problem was found (degree, morphism id, composable pair, ...).
    pub at: String,
    pub reason: String,
}

impl Violation {
    pub fn new(at: impl Into<String>, reason: impl Into<String>) -> Self {
        Violation { at: at.into(), reason: reason.into() }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.at, self.reason)
    }
}

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("validation failed: {}", fmt_violations(.0))]
    Violations(Vec<Violation>),
    #[error("incoherent diagram between {0} and {1}")]
    Incoherent(String, String),
    #[error("unknown id: {0}")]
    UnknownId(String),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

fn fmt_violations(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<Vec<Violation>> for Error {
    fn from(vs: Vec<Violation>) -> Self {
        Error::Violations(vs)
    }
}
