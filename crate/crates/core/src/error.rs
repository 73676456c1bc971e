use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arithmetic outside the domain of an operation (inverse of zero).
    #[error("domain error: {0}")]
    Domain(String),

    /// Caller passed arguments that violate an operation's preconditions.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    /// A term, pair-queue or basis budget was exceeded.
    #[error("resource limit exceeded: {what} (limit {limit}, reached {reached})")]
    Resource {
        what: String,
        limit: usize,
        reached: usize,
    },

    /// The quotient is not zero-dimensional.
    #[error("quotient is not zero-dimensional: variable `{variable}` has no pure power among leading terms")]
    NotZeroDimensional { variable: String },

    #[error("not Gorenstein: socle of the parameter quotient has dimension {socle_dim}, expected 1")]
    NotGorenstein { socle_dim: usize },

    #[error("invalid system of parameters: {0}")]
    InvalidSop(String),

    #[error("invalid ring presentation: {0}")]
    InvalidRing(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
