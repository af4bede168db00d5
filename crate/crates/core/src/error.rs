use thiserror::Error;

/// Every failure the library can report.
///
/// Each variant maps to a stable machine-readable code (see [`Error::code`]),
/// which the command-line front end prints as a prefix.
#[derive(Debug, Error)]
pub enum Error {
    #[error("mode count mismatch: {0} vs {1}")]
    ModeMismatch(usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not antisymmetric (max deviation {0:.3e})")]
    NotAntisymmetric(f64),

    #[error("matrix is not orthogonal (max deviation {0:.3e})")]
    NotOrthogonal(f64),

    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("dense oracle supports at most {max} modes, got {n}")]
    TooLarge { n: usize, max: usize },

    #[error("symmetry value vanishes for n={n}, eta={eta}")]
    ZeroSymmetry { n: usize, eta: usize },

    #[error("mitigation failed: degree-{degree} symmetry ratio {ratio:.3e} is too small")]
    MitigationFailure { degree: usize, ratio: f64 },

    #[error("missing estimate for index set {0}")]
    MissingEstimate(String),

    #[error("accumulator holds no samples")]
    EmptyAccumulator,

    #[error("integral symmetry violated: {0}")]
    IntegralSymmetry(String),

    #[error("inconsistent partition: {0}")]
    Partition(String),

    #[error("malformed gate program: {0}")]
    MalformedProgram(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ModeMismatch(..) => "E_MODES",
            Error::InvalidArgument(_) => "E_ARG",
            Error::NotAntisymmetric(_) => "E_ANTISYM",
            Error::NotOrthogonal(_) => "E_ORTHO",
            Error::NotUnitary(_) => "E_UNITARY",
            Error::InvalidState(_) => "E_STATE",
            Error::Dimension(_) => "E_DIM",
            Error::TooLarge { .. } => "E_TOO_LARGE",
            Error::ZeroSymmetry { .. } => "E_ZERO_SYMMETRY",
            Error::MitigationFailure { .. } => "E_MITIGATION",
            Error::MissingEstimate(_) => "E_MISSING",
            Error::EmptyAccumulator => "E_EMPTY",
            Error::IntegralSymmetry(_) => "E_INTEGRALS",
            Error::Partition(_) => "E_PARTITION",
            Error::MalformedProgram(_) => "E_PROGRAM",
            Error::Io(_) => "E_IO",
            Error::Json(_) => "E_JSON",
            Error::Csv(_) => "E_CSV",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
