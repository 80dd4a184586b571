use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime (linear codes need a prime field Z_q)")]
    NotPrime(u64),

    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),

    #[error("entry {value} at row {row}, column {column} is outside [0, {q})")]
    EntryOutOfRange {
        row: usize,
        column: usize,
        value: u64,
        q: u32,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix has rank {rank} but {k} rows; the code would not have dimension {k}")]
    RankDeficient { rank: usize, k: usize },

    #[error("column {column} is identically zero")]
    ZeroColumn { column: usize },

    #[error("size overflow while computing {0}")]
    SizeOverflow(String),

    #[error("unknown weight function `{0}` (expected hamming, lee, manhattan or custom:FILE)")]
    UnknownWeightName(String),

    #[error("invalid weight table: {0}")]
    InvalidWeightTable(String),

    #[error("weight function `{0}` does not take every value 1..=m on nonzero symbols")]
    NotInitialSegment(String),

    #[error("length n = {n} outside the admissible range [{min}, {max}] ({citation})")]
    OutOfRange {
        n: u64,
        min: u64,
        max: u64,
        citation: &'static str,
    },

    #[error("the Lee construction needs an odd prime, got q = {0}")]
    NotOdd(u32),

    #[error("code is not full weight spectrum, the support bound does not apply")]
    NotFws,

    #[error("enumeration needs {required} items but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("could not start worker pool: {0}")]
    WorkerPool(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub(crate) fn overflow(what: &str) -> Error {
    Error::SizeOverflow(what.to_string())
}
