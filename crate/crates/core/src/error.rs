use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the engine can report.
///
/// Variants are grouped by the exit code the command line front end maps them to:
/// parse problems, validation problems and truncation/limit problems.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input: {0}")]
    ZeroInput(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("series not expandable: denominator vanishes at t = 0")]
    NonExpandable,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("out-of-range parameter: {0}")]
    OutOfRange(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("already doubled: quiver contains star arrow {0}")]
    AlreadyDoubled(String),
    #[error("wrong family: {0}")]
    WrongFamily(String),
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    #[error("constraint-violation: c·t mismatch at pair {0}")]
    ConstraintViolation(String),
    #[error("zero-scalar: arrow {0} is scaled by zero")]
    ZeroScalar(String),
    #[error("infinite-order: scalar for arrow {0} is not a root of unity")]
    InfiniteOrder(String),
    #[error("missing scalar for arrow {0}")]
    MissingScalar(String),
    #[error("quiver mismatch: {0}")]
    QuiverMismatch(String),
    #[error("index error: {0}")]
    Index(String),

    #[error("truncation exceeded: degree {degree} is above cutoff {cutoff}")]
    TruncationExceeded { degree: usize, cutoff: usize },
    #[error("cutoff too small: {0}")]
    CutoffTooSmall(String),
    #[error("group closure exceeded bound {0}")]
    BoundExceeded(usize),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("inconsistent basis: {0}")]
    InconsistentBasis(String),
}

impl Error {
    /// Process exit status used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::TruncationExceeded { .. }
            | Error::CutoffTooSmall(_)
            | Error::BoundExceeded(_)
            | Error::WindowTooSmall(_) => 4,
            _ => 3,
        }
    }
}
