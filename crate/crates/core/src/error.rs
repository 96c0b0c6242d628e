use thiserror::Error;

/// Errors produced by field arithmetic, colorings, verification, constructions and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {value} out of range (limit {limit})")]
    OutOfRange { value: u64, limit: u64 },
    #[error("{cells} cells exceed the guard of {guard}")]
    TooLarge { cells: u128, guard: u64 },
    #[error("color {missing} is never attained")]
    NotSurjective { missing: u32 },
    #[error("inconsistent quotient matrix: {0}")]
    Inconsistent(String),
    #[error("color graph of the quotient matrix is disconnected")]
    Disconnected,
    #[error("quotient matrix has eigenvalues outside the spectrum of H({n},{q})")]
    SpectrumNotInGraph { n: usize, q: u32 },
    #[error("invalid color partition: {0}")]
    InvalidPartition(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("outer coloring does not have the required quotient matrix: {0}")]
    BadOuterColoring(String),
    #[error("coloring does not depend essentially on argument {position}")]
    NotEssential { position: usize },
    #[error("{value} is not a power of two")]
    NotPowerOfTwo { value: u64 },
    #[error("bad density {r}/{s}: need s a power of two, r odd, 0 < r < s")]
    BadDensity { r: u64, s: u64 },
    #[error("collection is not uniform: {0}")]
    NotUniform(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("payload has {found} values, expected q^n = {expected}")]
    LengthMismatch { expected: u64, found: u64 },
    #[error("color {value} at vertex {vertex} is not below k = {k}")]
    ColorOutOfRange { vertex: u64, value: u32, k: u32 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
