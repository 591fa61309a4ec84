use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factors are equal; no Stokes directions")]
    EqualFactors,
    #[error("angle {theta} is a Stokes direction for the pair ({left}, {right})")]
    StokesDirectionHit {
        left: String,
        right: String,
        theta: String,
    },
    #[error("leading coefficient of {left} - {right} has an argument that is not a rational multiple of pi")]
    IrrationalDifference { left: String, right: String },
    #[error("assumption violated by components {first} and {second}: {reason}")]
    AssumptionViolation {
        first: usize,
        second: usize,
        reason: String,
    },
    #[error("invalid component {index}: {reason}")]
    InvalidComponent { index: usize, reason: String },
    #[error("unsupported twist: {0}")]
    UnsupportedTwist(String),
    #[error("resolution left a bad point in chart {chart}")]
    ResolutionIncomplete { chart: String },
    #[error("malformed Cech datum: {0}")]
    MalformedDatum(String),
    #[error("designated basis is not transverse to the image of d0")]
    BasisNotTransverse,
    #[error("no unit pivot available during symbolic elimination")]
    PivotNotUnit,
    #[error("linear system is inconsistent")]
    InconsistentSystem,
    #[error("images do not form a basis: {0}")]
    NotABasis(String),
    #[error("matrix is singular: {0}")]
    SingularMatrix(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation needs the matrix backend")]
    NeedsMatrixBackend,
    #[error("Stokes datum violation: {0}")]
    StokesDatumViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
