use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate point label '{0}'")]
    DuplicatePoints(String),
    #[error("basis columns are linearly dependent")]
    DependentBasis,
    #[error("points '{0}' and '{1}' have identical rows and cannot be separated")]
    NonSeparating(String, String),
    #[error("malformed scalar '{0}'")]
    MalformedScalar(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown point label '{0}'")]
    UnknownPoint(String),
    #[error("polyhedron is unbounded")]
    UnboundedInput,
    #[error("Choquet boundary is not fully decided")]
    UndecidedBoundary,
    #[error("space does not contain the constant functions")]
    NoConstants,
    #[error("unsupported in complex mode: {0}")]
    ComplexModeUnsupported(String),
    #[error("measure does not have total variation one")]
    NormNotOne,
    #[error("value {0} has irrational modulus")]
    IrrationalModulus(String),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("the set A must be nonempty")]
    EmptyA,
    #[error("random space generation gave up after {0} attempts")]
    ResamplingExhausted(usize),
    #[error("space is not simplicial at point '{0}'")]
    NotSimplicial(String),
    #[error("complex-mode simpliciality is undecided")]
    ComplexUndecided,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("report version mismatch: {0}")]
    VersionMismatch(String),
    #[error("witness failure: {0}")]
    WitnessFailure(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Schema(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
