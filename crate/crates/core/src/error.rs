use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report. Messages name the violated
/// invariant so the CLI can surface them as one-line diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero-class brace: the brace has no clicks (sigma = 0)")]
    ZeroClassBrace,

    #[error("outcome {0} has an empty ensemble; kappa is undefined")]
    EmptyOutcome(String),

    #[error("duplicate outcome symbol {0} in brace")]
    DuplicateOutcome(String),

    #[error("replication factor {factor} is not realizable: {count} * {factor} is not an integer")]
    NotRealizable { factor: String, count: String },

    #[error("replication factor must be positive, got {0}")]
    NonPositiveFactor(String),

    #[error("invalid statistics: {0}")]
    InvalidStatistics(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("mixture weights sum to {0}, expected exactly 1")]
    WeightSum(String),

    #[error("kappa/sigma pair is not realizable: {0}")]
    InvalidKappaSigma(String),

    #[error("click record {position} has outcome index {outcome} but instrument {instrument} has {arity} eigen symbols")]
    UnknownOutcome {
        position: usize,
        outcome: usize,
        instrument: String,
        arity: usize,
    },

    #[error("click record {position} references instrument {found}, expected {expected}")]
    WrongInstrument {
        position: usize,
        found: String,
        expected: String,
    },

    #[error("division by zero: (0,0) has no inverse")]
    DivisionByZero,

    #[error("ordinal {0} exceeds the nesting depth limit of {max}", max = crate::numeric::MAX_ORDINAL)]
    OrdinalTooLarge(usize),

    #[error("dimension must lie in 2..={max}, got {0}", max = crate::statespace::MAX_DIMENSION)]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("instrument {0}: eigen symbols must be pairwise distinct")]
    DuplicateEigenSymbol(String),

    #[error("zero vector has no statistics")]
    ZeroVector,

    #[error("basis mismatch: no registered basis change from {from} to {to}")]
    BasisMismatch { from: String, to: String },

    #[error("singular basis change from {from} to {to}: determinant is zero")]
    SingularMatrix { from: String, to: String },

    #[error("unknown instrument {0}")]
    UnknownInstrument(String),

    #[error("eigen index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("coarse-grain map does not cover spectral label {0}")]
    IncompleteMerge(String),

    #[error("superposition needs at least one term")]
    EmptySuperposition,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}
