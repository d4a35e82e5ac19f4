use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported qubit count {0} (supported: 1..=12)")]
    QubitCount(usize),

    #[error("qubit {qubit} out of range for a {n}-qubit state")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("amplitudes: expected {expected} entries, found {found}")]
    AmplitudeCount { expected: usize, found: usize },

    #[error("state vector has zero norm")]
    ZeroNorm,

    #[error("unknown state name `{0}`")]
    UnknownState(String),

    #[error("state `{name}` requires {requirement}, got n = {n}")]
    IncompatibleQubitCount {
        name: String,
        requirement: String,
        n: usize,
    },

    #[error("matrix is not unitary (max |u^H u - I| = {0:e})")]
    NotUnitary(f64),

    #[error("matrix is not Hermitian (max |m - m^H| = {0:e})")]
    NotHermitian(f64),

    #[error("invalid font: {0}")]
    InvalidFont(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
