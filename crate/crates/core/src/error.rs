use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse {input:?}: {message}")]
    Parse { input: String, message: String },

    #[error("parameter {0} has no assigned value")]
    MissingParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("metric is not symmetric at ({0}, {1})")]
    MetricNotSymmetric(usize, usize),

    #[error("metric not invertible: determinant is zero")]
    SingularMetric,

    #[error("metric inverse is not polynomial: determinant {0} is not a constant")]
    NonPolynomialInverse(String),

    #[error("declared signature {declared:?} does not match the diagonal {actual:?}")]
    SignatureMismatch {
        declared: (usize, usize),
        actual: (usize, usize),
    },

    #[error("unsupported dimension {dim}: {reason}")]
    UnsupportedDimension { dim: usize, reason: String },

    #[error("unsupported valence ({upper},{lower}) for {operation}")]
    Valence {
        upper: usize,
        lower: usize,
        operation: &'static str,
    },

    #[error("degenerate 2-plane: {0}")]
    DegeneratePlane(String),

    #[error("plane vectors must have constant components")]
    SymbolicPlane,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
