use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("value {0} is out of the supported range (1 ≤ n < 2^63)")]
    OutOfRange(i64),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(String),

    #[error("modulus {0} is invalid (moduli must be ≥ 2)")]
    InvalidModulus(i64),

    #[error("duplicate modulus {0}")]
    DuplicateModulus(i64),

    #[error("congruence set is empty")]
    EmptyCongruenceSet,

    #[error("moduli set is empty")]
    EmptyModuliSet,

    #[error("period {period} exceeds the sieve budget of {budget} residues")]
    SieveBudgetExceeded { period: i64, budget: i64 },

    #[error("node budget of {budget} exhausted after {explored} nodes")]
    BudgetExhausted { explored: u64, budget: u64 },

    #[error("congruence set is not a covering (smallest uncovered integer: {smallest_uncovered})")]
    NotACovering { smallest_uncovered: i64 },

    #[error("modulus {modulus} does not divide {value}")]
    ModulusNotDividing { modulus: i64, value: i64 },

    #[error("window {window} is not a common multiple of modulus {modulus}")]
    WindowNotCommonMultiple { window: i64, modulus: i64 },

    #[error("{0} is not prime")]
    NotPrime(i64),

    #[error("family hypothesis violated: {0}")]
    FamilyHypothesis(String),

    #[error("{value} does not have the shape of the primitive-covering-number family: {reason}")]
    NotInFamily { value: i64, reason: String },

    #[error("no qualifying consecutive prime pair found below {limit}")]
    NoQualifyingPair { limit: i64 },

    #[error("factorial argument would be negative: {0}")]
    NegativeFactorialArgument(String),

    #[error("counting formula division is not exact; the moduli set violates the counting hypotheses")]
    NonExactDivision,

    #[error("moduli set is not minimal: {0}")]
    NotMinimalModuli(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
