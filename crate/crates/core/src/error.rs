use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("field size {p}^{e} exceeds the table cap of {cap} elements")]
    FieldTooLarge { p: u64, e: u32, cap: u64 },
    #[error("modulus is not monic of degree {0}")]
    BadModulus(u32),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("character argument zero")]
    ZeroArgument,
    #[error("{n} does not divide {m}")]
    NotDivisible { n: u64, m: u64 },
    #[error("{t} is not coprime to {m}")]
    NotCoprime { t: i64, m: u64 },
    #[error("characters belong to different fields")]
    FieldMismatch,
    #[error("expected {expected} lower parameters, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("negative valuation: {0}")]
    NegativeValuation(String),
    #[error("series not p-adically integral at term {0}")]
    NonIntegralTerm(usize),
    #[error("non-ordinary (unit root undefined)")]
    NonOrdinary,
    #[error("series does not terminate")]
    NonTerminating,
    #[error("zero denominator at term {0}")]
    ZeroDenominator(usize),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("singular parameter: {0}")]
    Singular(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
