use thiserror::Error;

/// Errors produced by graph construction, norm evaluation and the verifiers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph is not simple: {0}")]
    NotSimple(String),
    #[error("graph is not connected: vertex {unreachable} unreachable from vertex {from}")]
    NotConnected { from: usize, unreachable: usize },
    #[error("vertex id {vertex} out of range for {num_vertices} vertices")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },
    #[error("edge list is empty")]
    EmptyEdgeList,
    #[error("size too small: {0}")]
    SizeTooSmall(String),
    #[error("dimension must be positive, got {0}")]
    BadDimension(f64),
    #[error("graph too small: {0}")]
    GraphTooSmall(String),
    #[error("envelope is not nonincreasing at index {0}")]
    EnvelopeNotMonotone(usize),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parameter order violated: {0}")]
    ParamOrder(String),
    #[error("parameter regime violated: {0}")]
    RegimeViolation(String),
    #[error("matrix is not entrywise dominated")]
    NotDominated,
    #[error("zero matrix")]
    ZeroMatrix,
    #[error("matrix size {size} exceeds cap {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("bad radius: {0}")]
    BadRadius(String),
    #[error("radius {n_prime} smaller than 2N = {min}")]
    RadiusTooSmall { n_prime: usize, min: usize },
    #[error("graph measure is not normal (D2 = {0})")]
    NotNormal(f64),
    #[error("matrix is not diagonal")]
    NotDiagonal,
    #[error("matrix is singular")]
    Singular,
    #[error("inversion residual {residual:e} exceeds {limit:e}")]
    ResidualTooLarge { residual: f64, limit: f64 },
    #[error("need at least 4 gamma values, got {0}")]
    GridTooCoarse(usize),
    #[error("sequence is empty")]
    EmptySequence,
    #[error("symbol modulus {0} exceeds 1")]
    SymbolTooLarge(f64),
    #[error("matrix is not row-stochastic: {0}")]
    NotStochastic(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite matrix entry at ({0}, {1})")]
    NonFinite(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
