//! Exact verification of Virasoro blow-up relations, Urod-algebra stress tensors and
//! the associated q-series character identities.

pub mod blowup;
pub mod cache;
pub mod characters;
pub mod coeff;
pub mod configurations;
pub mod linalg;
pub mod nekrasov;
pub mod ope;
pub mod registry;
pub mod report;
pub mod verdict;
pub mod verma;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("grade {0} is not a multiple of 1/4")]
    GradeDenominator(String),
    #[error("negative grade {0}")]
    NegativeGrade(String),
    #[error("negative truncation order")]
    NegativeOrder,
    #[error("symbol sets differ: {0} vs {1}")]
    MismatchedSymbols(String, String),
    #[error("prefixes {0} and {1} do not differ by an element of (1/4)Z")]
    PrefixMismatch(String, String),
    #[error("requested order {0} exceeds available order {1}")]
    OrderExceeded(String, String),
    #[error("leading coefficient is not invertible")]
    NotInvertible,
    #[error("q -> beta q is only defined for integer grades and integer prefixes")]
    SymbolicScaling,
    #[error("function is not even in {0}")]
    NotEven(String),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("singular Gram matrix at level {0}")]
    SingularGram(usize),
    #[error("non-integer mutual locality between charges {0} and {1}")]
    NonLocal(i64, i64),
    #[error("truncation exceeded: {0}")]
    Truncation(String),
    #[error("underdetermined: {0}")]
    Underdetermined(String),
    #[error("unknown identity: {0}")]
    UnknownIdentity(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
