use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{0}")]
    ModulusReducible(u64),
    #[error("q = {q} exceeds the size cap {cap}")]
    FieldTooLarge { q: u64, cap: u64 },
    #[error("malformed modulus: {0}")]
    BadModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dlog of the zero element is undefined")]
    ZeroElement,
    #[error("element encoding {0} out of range [0, {1})")]
    OutOfRange(u64, u64),
    #[error("operands belong to different field contexts")]
    ContextMismatch,
    #[error("{d} does not divide q - 1 = {qm1}")]
    DNotDivisor { d: u64, qm1: u64 },
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("p = {p} divides d = {d}")]
    PDividesD { d: u64, p: u64 },
    #[error("computation too large: {0}")]
    TooLarge(String),
    #[error("non-integral result in an identity that must be integral: {0}")]
    NonIntegralResult(String),
    #[error("too many variables: s = {0} exceeds {1}")]
    TooManyVariables(usize, usize),
    #[error("character of order {0} has a trivial factor; Gauss-sum route needs all factors nontrivial")]
    TrivialFactorCharacter(u64),
    #[error("declared character order {declared} does not match actual order {actual}")]
    OrderMismatch { declared: u64, actual: u64 },
    #[error("zero input")]
    ZeroInput,
    #[error("b must be nonzero")]
    ZeroB,
    #[error("s = {0} is too small for this operation (needs s > 2)")]
    STooSmall(usize),
    #[error("numerical failure: residual {residual:e} exceeds budget {budget:e}")]
    NumericalFailure { residual: f64, budget: f64 },
    #[error("d = {0} is not (p,r)-admissible for any r")]
    NotAdmissible(u64),
    #[error("the d_i are admissible but with different minimal r: {0:?}")]
    NoCommonR(Vec<u64>),
    #[error("2r = {two_r} does not divide n = {n}")]
    ParityViolation { two_r: u64, n: u32 },
    #[error("p = 2 has no quadratic character")]
    EvenCharacteristic,
    #[error("invalid hypersurface: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
