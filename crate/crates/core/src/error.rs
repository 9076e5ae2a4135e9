use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("qubit count {n} outside supported range {min}..={max}")]
    QubitCount { n: usize, min: usize, max: usize },

    #[error("mask {bits:#b} does not fit in {n} qubits")]
    MaskOutOfRange { bits: u64, n: usize },

    #[error("qubit {qubit} outside 1..={n}")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("invalid bipartition {0}: both sides must be nonempty")]
    TrivialPartition(String),

    #[error("invalid bit-string {0:?}")]
    BitString(String),

    #[error("{field}: negative weight {value}")]
    NegativeWeight { field: String, value: f64 },

    #[error("normalization: weights sum to {sum}, expected 1")]
    Normalization { sum: f64 },

    #[error("expected {expected} weight pairs, got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix has {got} entries, expected {expected}")]
    MatrixShape { expected: usize, got: usize },

    #[error("input is not positive semidefinite (min eigenvalue {0})")]
    NotPositive(f64),

    #[error("noise probability {0} outside [0, 1]")]
    Probability(f64),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("{0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
