use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("GF({0}^3) is too large for the table encoding")]
    FieldTooLarge(u64),
    #[error("invalid field element {0}")]
    BadElement(String),
    #[error("basis is not linearly independent over the subfield")]
    DependentBasis,
    #[error("zero Plücker vector does not define a line")]
    DegenerateLine,
    #[error("point ({0}) is not on the quadric")]
    NotOnQuadric(String),
    #[error("q = {q}: {reason}")]
    Unsupported { q: u64, reason: String },
    #[error("group is not semiregular: orbit of point {point} has size {size}, expected {expected}")]
    NotSemiregular {
        point: usize,
        size: usize,
        expected: usize,
    },
    #[error("partition is not a refinement: {0}")]
    InconsistentPartitions(String),
    #[error("partition is not equitable: class {class}, column {column}: {first} vs {second}")]
    NotEquitable {
        class: usize,
        column: usize,
        first: u64,
        second: u64,
    },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("certificate: {0}")]
    Certificate(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
