use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("shape mismatch between Weyl elements or weights")]
    ShapeMismatch,
    #[error("Hodge-Tate weights {0:?} are not strictly increasing")]
    NotRegular(Vec<i64>),
    #[error("exhaustive search supports n <= {max}, got n = {n}")]
    SearchBound { n: usize, max: usize },
    #[error("invalid permutation {0}")]
    InvalidPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("polynomial parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("S-polynomial degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: u32, bound: u32 },
    #[error("resolution did not terminate within {0} steps")]
    LengthExceeded(usize),
    #[error("matrices do not compose to zero")]
    NotAComplex,
    #[error(
        "resolution length {length} exceeds codimension {codim}; quotient is not Cohen-Macaulay"
    )]
    NotCM { length: usize, codim: usize },
    #[error("point does not lie on the variety: generator {0} does not vanish")]
    PointNotOnVariety(String),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("serialization error: {0}")]
    Serde(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("transcribed matrices fail verification: {0}")]
    TranscriptionMismatch(String),
    #[error("rederived component disagrees with the reference ideal")]
    ComponentMismatch,
    #[error("invalid point specification: {0}")]
    InvalidSpec(String),
    #[error("unsupported component request: {0}")]
    Unsupported(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatOError {
    #[error("sheaf is zero: support condition w·w0 >= w_xR fails")]
    ZeroSheaf,
    #[error("generic multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumberTheoryError {
    #[error("prime {0} divides a leading coefficient or is not prime")]
    BadPrime(u64),
    #[error("no squarefree shift found up to {0}")]
    NoShiftFound(i64),
    #[error("polynomial parse error: {0}")]
    Parse(String),
    #[error("unknown builtin field set {0:?}")]
    UnknownFieldSet(String),
    #[error("polynomial {0} is reducible over Q")]
    Reducible(String),
    #[error("polynomial must have degree >= 1")]
    Degenerate,
    #[error("could not certify irreducibility of {0}")]
    NotCertified(String),
    #[error("splitting is not a congruence condition modulo {0}")]
    NotAbelian(u64),
}
