use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants are grouped by the exit code the command-line front end maps
/// them to: parse problems, polynomial preconditions, and oversized groups are
/// kept apart so callers can react to each differently.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,

    #[error("polynomial has a repeated factor (discriminant 0)")]
    NotSquarefree,

    #[error("prime {0} is ramified for this polynomial")]
    Ramified(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("group too large: more than {cap} elements (use import mode)")]
    GroupTooLarge { cap: usize },

    #[error("invalid class index {0}")]
    ClassIndex(usize),

    #[error("character table verification failed: {0}")]
    Verification(String),

    #[error("orthogonality check failed (max deviation {0})")]
    Orthogonality(String),

    #[error("values separate classes with equal class points; not in the restriction image")]
    NotInRestrictionImage,

    #[error("no s-polynomial of total degree <= {0} interpolates the values")]
    DegreeBoundTooSmall(u32),

    #[error("class map inconsistent: {0}")]
    ClassMap(String),

    #[error("variable s{0} out of range")]
    VariableOutOfRange(usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unknown group '{0}'")]
    UnknownGroup(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
