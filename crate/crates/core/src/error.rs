use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not self-adjoint (max deviation {deviation:e})")]
    NotSelfAdjoint { deviation: f64 },
    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported spin-space dimension {0} (only 2 and 3)")]
    UnsupportedDimension(usize),
    #[error("state space too large: {0} amplitudes")]
    TooLarge(usize),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("null filter: outcome {outcome} at site {site} has zero probability")]
    NullFilter { site: usize, outcome: usize },
    #[error("index out of range: {what} {index} (limit {limit})")]
    OutOfRange { what: &'static str, index: usize, limit: usize },
    #[error("degenerate context: eigenvalues must be mutually distinct")]
    DegenerateContext,
    #[error("basis is not orthonormal (max deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },
    #[error("no classical states: the diagram admits no two-valued state")]
    NoClassicalStates,
    #[error("too many atoms for exhaustive enumeration: {atoms} (limit {limit})")]
    TooManyAtoms { atoms: usize, limit: usize },
    #[error("missing vector for atom `{0}`")]
    MissingAtom(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
