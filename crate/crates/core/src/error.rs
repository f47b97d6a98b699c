use thiserror::Error;

/// Errors raised by the kernel.
///
/// Every variant carries a stable machine-readable code (see [`Error::code`])
/// which the command-line front end forwards verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input: {0}")]
    Zero(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("grade mismatch: {0}")]
    Grade(String),
    #[error("not a blade: {0}")]
    NotBlade(String),
    #[error("wrong manifold class: expected {expected}, found {found}")]
    WrongClass { expected: String, found: String },
    #[error("no common point: {0}")]
    Skew(String),
    #[error("regulus empty over the reals")]
    EmptyRegulus,
    #[error("no rational point found on the conic within the search bound")]
    NoRationalPoint,
    #[error("axis at infinity / pure translation complex; pitch undefined")]
    PitchUndefined,
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("mixed parity: element has both even and odd grades")]
    MixedParity,
    #[error("not a versor action: sandwich of e{basis} has a non-vector part")]
    NotVersor { basis: usize },
    #[error("singular transformation: {0}")]
    Singular(String),
    #[error("anti-orthogonal line map: not Pin-representable (L^T Q L = {multiplier} Q)")]
    NotPinRepresentable { multiplier: String },
    #[error("line map multiplier {multiplier} is not a rational square; the versor would need irrational coefficients")]
    IrrationalScale { multiplier: String },
    #[error("null versor: no normalization")]
    NullVersor,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Zero(_) => "E_ZERO",
            Error::Degenerate(_) => "E_DEGENERATE",
            Error::Grade(_) => "E_GRADE",
            Error::NotBlade(_) => "E_NOT_BLADE",
            Error::WrongClass { .. } => "E_WRONG_CLASS",
            Error::Skew(_) => "E_SKEW",
            Error::EmptyRegulus => "E_EMPTY_REGULUS",
            Error::NoRationalPoint => "E_NO_RATIONAL_POINT",
            Error::PitchUndefined => "E_PITCH_UNDEFINED",
            Error::NotSkew => "E_NOT_SKEW",
            Error::MixedParity => "E_MIXED_PARITY",
            Error::NotVersor { .. } => "E_NOT_VERSOR",
            Error::Singular(_) => "E_SINGULAR",
            Error::NotPinRepresentable { .. } => "E_NOT_PIN_REPRESENTABLE",
            Error::IrrationalScale { .. } => "E_IRRATIONAL_SCALE",
            Error::NullVersor => "E_NULL_VERSOR",
            Error::Precondition(_) => "E_PRECONDITION",
            Error::Parse(_) => "E_PARSE",
            Error::Internal(_) => "E_INTERNAL",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
