use alloc::string::String;

/// Errors reported by the simulation core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid state: {0}")]
    InvalidState(&'static str),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("matrix is not an orthogonal projector (residual {residual:e})")]
    NotAProjector { residual: f64 },
    #[error("vectors do not form an orthonormal context")]
    NotAContext,
    #[error("numerical failure: {0}")]
    Numerical(&'static str),
    #[error("unknown observable `{0}`")]
    UnknownObservable(String),
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("invalid query: {0}")]
    InvalidQuery(&'static str),
    #[error("invalid distribution: {0}")]
    InvalidDistribution(&'static str),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("symbol stream has the wrong alphabet: {0}")]
    Alphabet(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
