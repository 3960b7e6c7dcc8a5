use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    InvalidPrime(u64),
    #[error("unknown field descriptor {0:?} (expected QQ or Fp:<prime>)")]
    InvalidField(String),
    #[error("characteristic {p} is too small, need p > {bound}")]
    CharacteristicTooSmall { p: u64, bound: u64 },
    #[error("division by zero in a coefficient")]
    DivisionByZero,
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unbound variable {name:?} at offset {position}")]
    UnboundVariable { name: String, position: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("polynomial is not weighted-homogeneous of degree {expected}")]
    NotHomogeneous { expected: u32 },
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("expected a binary form in two weight-1 variables")]
    NotBinaryForm,
    #[error("normalization violated: {0}")]
    Normalization(String),
    #[error("variety must be a threefold (5 variables with 1 equation or 6 with 2), got {vars} variables and {equations} equations")]
    WrongDimension { vars: usize, equations: usize },
    #[error("invalid variety: {0}")]
    InvalidVariety(String),
    #[error("coordinate point of {0} does not lie on the variety")]
    PointNotOnVariety(String),
    #[error("point is not on the variety")]
    NotOnVariety,
    #[error("point is a singular point of the variety")]
    SingularPoint,
    #[error("quotient type 1/{r}{weights:?} is not isolated")]
    NonIsolated { r: u32, weights: Vec<u32> },
    #[error("retry cap of {0} exhausted without a verified sample")]
    RetriesExhausted(usize),
    #[error("invalid symmetry witness: {0}")]
    InvalidWitness(String),
    #[error("unsupported variety: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Groebner(#[from] crate::groebner::GroebnerError),
}
