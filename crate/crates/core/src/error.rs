use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("factoring budget exceeded: cofactor {cofactor} has no factor below {trial_limit}")]
    BudgetExceeded { cofactor: String, trial_limit: u64 },

    #[error("p-adic valuation of zero is undefined")]
    ZeroValuation,

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("D = {0} must be a nonsquare integer >= 2")]
    BadPellDiscriminant(String),

    #[error("gcd(D, q) = {gcd} > 1 for D = {d}, q = {q}")]
    NotCoprime { d: String, q: String, gcd: String },

    #[error("modulus {modulus} does not divide v1 = {v1}")]
    ModulusDoesNotDivide { modulus: String, v1: String },

    #[error("search bound too large: {0}")]
    SearchTooLarge(String),

    #[error("none of the cases (i)-(v) applies: {0}")]
    NoCase(String),

    #[error("fixture line {line}: {msg}")]
    Fixture { line: usize, msg: String },

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
