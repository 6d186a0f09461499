use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("g(A) has a non-integral entry")]
    NonIntegralResult,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("could not fully factor {0}")]
    FactorizationIncomplete(BigInt),
    #[error("polynomial {0} is reducible over Q")]
    ReduciblePolynomial(String),
    #[error("the ideal dictionary needs degree >= 2, got {0}")]
    UnsupportedDegree(usize),
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("basis is linearly dependent over Q")]
    DependentBasis,
    #[error("generators do not span a full-rank lattice")]
    NotFullRank,
    #[error("lattice is not stable under multiplication by the field generator")]
    NotAnIdeal,
    #[error("lattice is not an order: {0}")]
    NotAnOrder(&'static str),
    #[error("lattice is not a sublattice of the given lattice")]
    NotASublattice,
    #[error("ideal is not a module over the given order")]
    NotAModule,
    #[error("det(A^{0} - I) = 0, periodic points are not isolated")]
    DegeneratePeriod(u64),
    #[error("characteristic polynomials differ")]
    CharPolyMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable variant name, used in CLI reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "NotSquare",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::SingularMatrix => "SingularMatrix",
            Error::NonIntegralResult => "NonIntegralResult",
            Error::NotMonic => "NotMonic",
            Error::DivisionByZero => "DivisionByZero",
            Error::FactorizationIncomplete(_) => "FactorizationIncomplete",
            Error::ReduciblePolynomial(_) => "ReduciblePolynomial",
            Error::UnsupportedDegree(_) => "UnsupportedDegree",
            Error::FieldMismatch => "FieldMismatch",
            Error::ZeroInverse => "ZeroInverse",
            Error::DependentBasis => "DependentBasis",
            Error::NotFullRank => "NotFullRank",
            Error::NotAnIdeal => "NotAnIdeal",
            Error::NotAnOrder(_) => "NotAnOrder",
            Error::NotASublattice => "NotASublattice",
            Error::NotAModule => "NotAModule",
            Error::DegeneratePeriod(_) => "DegeneratePeriod",
            Error::CharPolyMismatch => "CharPolyMismatch",
            Error::Parse(_) => "ParseError",
        }
    }

    /// Parse failures are input errors; everything else is a violated
    /// mathematical precondition.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
