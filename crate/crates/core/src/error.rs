use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("monomials live in different rings: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },
    #[error("a monomial needs at least one variable")]
    NoVariables,
    #[error("{0} is empty for t = 0")]
    EmptySet(&'static str),
    #[error("closed form does not apply: {0}")]
    NotApplicable(&'static str),
    #[error("expected a monomial of degree {expected}, got degree {got}")]
    DegreeMismatch { expected: u64, got: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not irreducible over GF({0})")]
    ReducibleModulus(u64),
    #[error("invalid field element for GF({q}): {detail}")]
    InvalidElement { q: u64, detail: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{what} is {value}, above the limit of {limit}")]
    GuardExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error(
        "{what} disagrees with enumeration at t = {t}, m = {m}: formula {formula}, oracle {oracle}"
    )]
    Mismatch {
        what: &'static str,
        t: u64,
        m: usize,
        formula: u64,
        oracle: u64,
    },
    #[error("malformed exponent list: {0}")]
    MalformedExponents(String),
}
