use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Parity a character exponent was expected to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator is divisible by {p}; value is not {p}-integral")]
    DenominatorDivisibleByP { p: u64 },
    #[error("p-adic precision exhausted")]
    PrecisionExhausted,
    #[error("divisor is not a p-adic unit")]
    NonUnitDivisor,
    #[error("residue is not divisible by p")]
    NotDivisibleByP,
    #[error("operands live over different primes ({left} vs {right})")]
    MismatchedPrime { left: u64, right: u64 },
    #[error("{n} is not coprime to {p}")]
    NotCoprime { n: i64, p: u64 },
    #[error("cyclotomic operands belong to different fields")]
    MismatchedField,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("index k={k} is not an even integer in [2, {p}-3]")]
    IndexOutOfRange { p: u64, k: u64 },
    #[error("the trivial character is not supported here")]
    TrivialCharacter,
    #[error("generalized Bernoulli number has a pole at p (character exponent {exponent})")]
    PoleAtP { exponent: u64 },
    #[error("p={p} exceeds the configured class-number bound {bound}")]
    ClassNumberBoundExceeded { p: u64, bound: u64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("grading mismatch: weight {left_weight}/eps {left_eps} vs weight {right_weight}/eps {right_eps}")]
    GradingMismatch {
        left_weight: u32,
        left_eps: u64,
        right_weight: u32,
        right_eps: u64,
    },
    #[error("requested congruence depth {requested} exceeds available precision {available}")]
    PrecisionTooLow { requested: u32, available: u32 },
    #[error("character exponent {exponent} must be {expected}")]
    BadCharacterParity { exponent: u64, expected: Parity },
    #[error("G_{k} does not embed {p}-adically (constant term not {p}-integral)")]
    EmbeddingFailure { p: u64, k: u32 },
    #[error(
        "no unit-constant form exists for (p={p}, k={k}); Carlitz check returned {carlitz_holds}"
    )]
    CaseThreeViolation { p: u64, k: u64, carlitz_holds: bool },
    #[error("truncation {truncation} is too short for an operator of index {index}")]
    TruncationTooShort { truncation: usize, index: u64 },
    #[error("(p={p}, k={k}) is not an irregular pair")]
    InputNotIrregular { p: u64, k: u64 },
    #[error("no distinguishing prime up to {bound}")]
    NoWitnessFound { bound: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
