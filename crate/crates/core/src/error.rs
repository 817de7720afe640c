use thiserror::Error;

/// Every failure the library can report. `name()` gives the stable tag used
/// in JSON error payloads.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("({0}) is not unimodular")]
    NotUnimodular(String),
    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("ring is not a domain: {0}")]
    NotADomain(String),
    #[error("point {0} has no unimodular representative")]
    NotABezoutPoint(String),
    #[error("determinant {0} is not a unit")]
    NonUnitDeterminant(String),
    #[error("{0} and {1} are not adjacent")]
    NotAnEdge(String, String),
    #[error("no weak Euclidean algorithm found: {0}")]
    NoAlgorithmFound(String),
    #[error("matrix is not lower triangular: {0}")]
    NotInB(String),
    #[error("base matrix does not start at the first vertex")]
    BaseMismatch,
    #[error("paths are not composable: {0}")]
    NotComposable(String),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("path is not a loop at infinity")]
    NotALoop,
    #[error("word is not in the kernel of psi")]
    NotInKernel,
    #[error("vertex {0} not found")]
    VertexNotFound(String),
    #[error("loop leaves the complex at {0}")]
    LoopNotInComplex(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::UnsupportedRing(_) => "UnsupportedRing",
            Error::RingMismatch => "RingMismatch",
            Error::NotAUnit(_) => "NotAUnit",
            Error::NotUnimodular(_) => "NotUnimodular",
            Error::BoundExceeded(_) => "BoundExceeded",
            Error::NotADomain(_) => "NotADomain",
            Error::NotABezoutPoint(_) => "NotABezoutPoint",
            Error::NonUnitDeterminant(_) => "NonUnitDeterminant",
            Error::NotAnEdge(..) => "NotAnEdge",
            Error::NoAlgorithmFound(_) => "NoAlgorithmFound",
            Error::NotInB(_) => "NotInB",
            Error::BaseMismatch => "BaseMismatch",
            Error::NotComposable(_) => "NotComposable",
            Error::MoveNotApplicable(_) => "MoveNotApplicable",
            Error::NotALoop => "NotALoop",
            Error::NotInKernel => "NotInKernel",
            Error::VertexNotFound(_) => "VertexNotFound",
            Error::LoopNotInComplex(_) => "LoopNotInComplex",
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
