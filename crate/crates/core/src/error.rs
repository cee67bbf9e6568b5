use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("inconsistent system: row {row} disagrees with the others by {residual:e}")]
    InconsistentSystem { row: usize, residual: f64 },

    #[error("right-hand side is zero after row reduction")]
    ZeroRhs,

    #[error("system is not underdetermined: rank {rank} with {cols} columns")]
    NotUnderdetermined { rank: usize, cols: usize },

    #[error("numerical rank failure: {0}")]
    NumericalRankFailure(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("blow-up limit exceeded: {what} reached {count} (limit {limit})")]
    BlowupLimit {
        what: &'static str,
        count: usize,
        limit: usize,
    },

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("no sign pattern reproduces the right-hand side for the given modulus vector")]
    SignRecoveryFailure,

    #[error("operation needs corank 1, instance has corank {0}")]
    CorankMismatch(usize),

    #[error("no extreme point has a nonzero coordinate")]
    NoNonzeroCoordinate,

    #[error("exponent p = {0} outside (0, 1]")]
    InvalidExponent(f64),

    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
