use thiserror::Error;

/// Errors raised by the algebra kernel and the concentration lab.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in [2, 251]")]
    InvalidModulus(u32),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("size {size} exceeds the supported maximum {max}")]
    Scale { size: usize, max: usize },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("polynomial relation violated: p(a) is not zero")]
    RelationViolated,
    #[error("order violation: {0}")]
    Order(String),
    #[error("membership violation: {0}")]
    Membership(String),
    #[error("invalid structure: {0}")]
    Structure(String),
    #[error("outside domain: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
