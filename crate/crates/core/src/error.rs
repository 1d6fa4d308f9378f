use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a variety needs at least one exponent block")]
    NoBlocks,
    #[error("block {block} has no variables")]
    EmptyBlock { block: usize },
    #[error("exponent l[{block}][{var}] = {value} is not positive")]
    NonPositiveExponent { block: usize, var: usize, value: i64 },
    #[error("coefficients theta[{first}] and theta[{second}] coincide")]
    DuplicateTheta { first: usize, second: usize },
    #[error("invalid coefficient list: {0}")]
    InvalidTheta(String),
    #[error("variety is not adjusted: {0}")]
    NotAdjusted(String),
    #[error("variety is not rational; its divisor class group is not finitely generated")]
    NotRational,
    #[error("variety is factorial; there is no nontrivial grading to compute")]
    Factorial,
    #[error("operation requires {expected}, got {actual}")]
    WrongCase { expected: &'static str, actual: String },
    #[error("{divisor} does not divide {of}")]
    NotADivisor { divisor: String, of: String },
    #[error("minor size {k} out of range 1..={bound}")]
    MinorSizeOutOfRange { k: usize, bound: usize },
    #[error("({a}, {b}, {c}) is not a platonic triple")]
    NotPlatonic { a: u64, b: u64, c: u64 },
    #[error("variety is not hyperplatonic")]
    NotHyperplatonic,
    #[error("free variables present (m = {0}); the criterion needs m = 0")]
    FreeVariablesPresent(usize),
    #[error("iteration of Cox rings not admitted: {0}")]
    IterationNotAdmitted(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}
