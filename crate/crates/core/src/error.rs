use thiserror::Error;

/// Error taxonomy for the whole crate.
///
/// Precondition violations surface as [`Error::InvalidArgument`] /
/// [`Error::InvalidShape`] / [`Error::ShapeMismatch`], parser problems carry a
/// byte offset, and the Groebner engine reports configured resource caps as
/// [`Error::ResourceLimit`] so callers can distinguish "refused" from
/// "failed".
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("index out of bounds: {0}")]
    OutOfBounds(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("missing assignment for variable {0}")]
    MissingAssignment(String),

    #[error("variable {0} lies outside the allowed variable set")]
    ForeignVariable(String),

    #[error("main variables differ: {0}")]
    VariableMismatch(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("certificate construction failed: {0}")]
    CertificateFailure(String),

    #[error("point is not on the variety: {0}")]
    NotOnVariety(String),

    #[error("iteration did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
