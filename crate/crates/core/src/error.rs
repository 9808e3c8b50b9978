use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// [`Error::code`] gives a stable machine-readable tag used as the prefix of
/// CLI diagnostics.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    InvalidArgument(String),

    #[error("kernel is not orthogonalizable: K·Kᵀ has nonzero off-diagonal entry at ({row}, {col})")]
    NotOrthogonalizable { row: usize, col: usize },

    #[error("kernel is rank deficient: row {row} has zero norm")]
    RankDeficient { row: usize },

    #[error("matrix is not orthonormal: max |M·Mᵀ − I| = {deviation:e}")]
    NotOrthonormal { deviation: f64 },

    #[error("fast factorization does not reproduce the kernel: {0}")]
    FactorizationMismatch(String),

    #[error("inconsistent factorization: {0}")]
    InconsistentFactorization(String),

    #[error("cycle notation parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    #[error("image dimensions {width}×{height} are not multiples of {block}")]
    InvalidDimensions { width: usize, height: usize, block: usize },

    #[error("transform `{0}` is already registered")]
    DuplicateTransform(String),

    #[error("unknown transform `{0}`")]
    UnknownTransform(String),

    #[error("{}: unsupported image format: {reason}", path.display())]
    UnsupportedFormat { path: PathBuf, reason: String },

    #[error("{}: truncated payload: expected {expected} bytes, found {found}", path.display())]
    TruncatedPayload {
        path: PathBuf,
        expected: usize,
        found: usize,
    },

    #[error("{}: unsupported maxval {maxval} (only 255 is accepted)", path.display())]
    UnsupportedMaxval { path: PathBuf, maxval: u32 },

    #[error("{}: malformed header: {reason}", path.display())]
    MalformedHeader { path: PathBuf, reason: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short kebab-case tag identifying the error class.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::NotOrthogonalizable { .. } => "not-orthogonalizable",
            Error::RankDeficient { .. } => "rank-deficient",
            Error::NotOrthonormal { .. } => "not-orthonormal",
            Error::FactorizationMismatch(_) => "factorization-mismatch",
            Error::InconsistentFactorization(_) => "inconsistent-factorization",
            Error::Parse { .. } => "parse-error",
            Error::NumericalDegeneracy(_) => "numerical-degeneracy",
            Error::InvalidDimensions { .. } => "invalid-dimensions",
            Error::DuplicateTransform(_) => "duplicate-transform",
            Error::UnknownTransform(_) => "unknown-transform",
            Error::UnsupportedFormat { .. } => "unsupported-format",
            Error::TruncatedPayload { .. } => "truncated-payload",
            Error::UnsupportedMaxval { .. } => "unsupported-maxval",
            Error::MalformedHeader { .. } => "malformed-header",
            Error::Io { .. } => "io-error",
            Error::VerificationFailed(_) => "verification-failed",
        }
    }
}
