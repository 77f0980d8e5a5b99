use thiserror::Error;

/// Errors raised while constructing or operating on states, distributions and codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("not Hermitian (asymmetry {deviation:e} exceeds tolerance)")]
    NotHermitian { deviation: f64 },

    #[error("not unitary (max |U^dag U - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("trace is not 1 (got {trace})")]
    NotUnitTrace { trace: f64 },

    #[error("not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("state vector is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("vectors are not orthonormal (deviation {deviation:e} at pair ({i}, {j}))")]
    NotOrthonormal { i: usize, j: usize, deviation: f64 },

    #[error("invalid probability {value} at index {index}")]
    InvalidProbability { index: usize, value: f64 },

    #[error("probabilities do not sum to 1 (sum = {sum})")]
    ProbabilitiesNotNormalized { sum: f64 },

    #[error("empty distribution")]
    EmptyDistribution,

    #[error("label count {labels} does not match outcome count {outcomes}")]
    LabelMismatch { labels: usize, outcomes: usize },

    #[error("bad alpha {alpha}: must be finite, > 0 and != 1")]
    BadAlpha { alpha: f64 },

    #[error("bad split: q1 + q2 = {sum} but split entry is {target}")]
    BadSplit { sum: f64, target: f64 },

    #[error("outcome {outcome} has zero probability")]
    ZeroProbabilityOutcome { outcome: usize },

    #[error("outcome index {outcome} out of range for dimension {dim}")]
    OutcomeOutOfRange { outcome: usize, dim: usize },

    #[error("UnsupportedDimension: {dim} ({reason})")]
    UnsupportedDimension { dim: usize, reason: String },

    #[error("exact count overflows: {total} balls exceeds the exact range of {max}")]
    Overflow { total: u64, max: u64 },

    #[error("BlockTooLarge: block {block} over {alphabet} symbols (block must be 1..=4, alphabet^block <= 4096)")]
    BlockTooLarge { block: usize, alphabet: usize },

    #[error("tree was built for a source with {tree} symbols, got {source_len}")]
    TreeSourceMismatch { tree: usize, source_len: usize },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
