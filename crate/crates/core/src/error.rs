use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by a non-literal expression at offset {0}")]
    NonLiteralDivision(usize),
    #[error("invalid field characteristic {0}: expected 0 or a prime below 2^31")]
    InvalidCharacteristic(u64),
    #[error("division by zero in the coefficient field")]
    DivisionByZero,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("monomial length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operation needs a local order or homogeneous input")]
    NotHomogeneous,
    #[error("module or ring has infinite length")]
    InfiniteLength,
    #[error("quotient is not m-primary (Krull dimension {0})")]
    PositiveDimension(usize),
    #[error("base ring is not Artinian Gorenstein")]
    NotArtinianGorenstein,
    #[error("module is not Cohen-Macaulay: Ext into the ring is nonzero at indices {0:?}")]
    NotCohenMacaulay(Vec<usize>),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("module has a free direct summand; horizontal linkage needs a stable module")]
    Unstable,
    #[error("ideal is not contained in the annihilator of the module")]
    NotInAnnihilator,
    #[error("lift failed: {0}")]
    LiftFailed(String),
    #[error("operator decomposition infeasible: {0}")]
    DecompositionInfeasible(String),
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
