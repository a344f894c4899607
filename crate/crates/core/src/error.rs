use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Bad group parameters, element shapes, or family mismatches.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// An enumeration or construction would exceed the configured budget.
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    /// The input relation is not a partial order (for example it has a cycle).
    #[error("structural error: {0}")]
    Structural(String),
    /// An argument set does not satisfy a closure precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// An operation needs a rank function that the poset does not carry.
    #[error("state error: {0}")]
    State(String),
    #[error("unsupported poset shape: {0}")]
    UnsupportedShape(String),
    #[error("not supported: {0}")]
    NotSupported(String),
    /// A partition claimed to come from poset automorphisms is inconsistent with that.
    #[error("partition is not induced by an automorphism action: {0}")]
    NotAnAutomorphismAction(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("schema error: {0}")]
    Schema(String),
    /// An internal self-check failed. Always a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
}
