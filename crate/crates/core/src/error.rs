use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit {qubit} out of range for width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("gate uses qubit {0} twice")]
    RepeatedQubit(usize),
    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },
    #[error("Pauli string length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("empty Pauli string")]
    EmptyString,
    #[error("invalid Pauli symbol {0:?}")]
    InvalidPauli(char),
    #[error("operation requires a non-trivial Pauli string")]
    TrivialString,
    #[error("{width} qubits exceeds the oracle limit of {limit}")]
    OracleLimit { width: usize, limit: usize },
    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("Y present in the intersection; run normalize_y first")]
    YInIntersection,
    #[error("gadgets commute, Euler exchange is trivial")]
    Commuting,
    #[error("unknown pass {0:?}")]
    UnknownPass(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
