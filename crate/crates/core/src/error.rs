use thiserror::Error;

use crate::parser::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} outside the supported range 2..=97")]
    CharacteristicOutOfRange(u32),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("characteristic mismatch: {left} vs {right}")]
    CharacteristicMismatch { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("exponent overflow (limit {})", u16::MAX)]
    ExponentOverflow,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("not a permutation of {0} variables")]
    InvalidPermutation(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("engine limit: {what} exceeded cap {cap}")]
    EngineLimit { what: &'static str, cap: u64 },
    #[error("usage: {0}")]
    Usage(String),
    #[error("catalog line {line}: {message}")]
    Catalog { line: usize, message: String },
    #[error("inconsistent verdict: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn is_engine_limit(&self) -> bool {
        matches!(self, Error::EngineLimit { .. } | Error::ExponentOverflow)
    }
}
