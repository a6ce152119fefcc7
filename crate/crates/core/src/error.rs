use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("gcd undefined: both arguments are zero")]
    GcdUndefined,
    #[error("no primary associate for {0}")]
    NoPrimaryAssociate(String),
    #[error("cannot factorize zero")]
    FactorZero,
    #[error("norm of {0} is too large to factor")]
    NormTooLarge(String),
    #[error("zero modulus")]
    ZeroModulus,
    #[error("non-coprime arguments: {0} and {1}")]
    NonCoprime(String, String),
    #[error("ramified modulus {0}")]
    RamifiedModulus(String),
    #[error("determinant {0} is not 1")]
    Determinant(String),
    #[error("outside implemented domain: {0}")]
    OutsideDomain(String),
    #[error("no unique Whittaker model for an {0}-fold cover")]
    NoUniqueWhittakerModel(u32),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("cannot parse element {0:?}: {1}")]
    Parse(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid index set {0}")]
    InvalidIndexSet(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("corrupt gauss cache record at line {line}: {record:?}")]
    CorruptCache { line: usize, record: String },
    #[error("gauss cache header mismatch: {0}")]
    CacheHeader(String),
    #[error("model gap: {0}")]
    ModelGap(String),
    #[error("insufficient table range; missing keys: {0:?}")]
    MissingKeys(Vec<Vec<u32>>),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("truncation box inconsistent with bound: {0}")]
    TruncationBox(String),
    #[error("divergent product at w = {0}")]
    Divergent(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
