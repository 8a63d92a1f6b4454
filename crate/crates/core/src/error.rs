use thiserror::Error;

/// Errors raised by the exact-arithmetic pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different number fields")]
    FieldMismatch,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("characteristic polynomial is reducible over Q")]
    ReduciblePolynomial,
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("matrix has no real eigenvalue > 1 strictly dominating the spectrum")]
    NotHyperbolic,
    #[error("matrix is not unimodular (determinant must be +1 or -1)")]
    NotUnimodular,
    #[error("Perron-Frobenius eigenvector has a non-positive coordinate")]
    NonPositiveEigenvector,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no non-negative representative found within the search bound")]
    NotFound,
    #[error("degree {0} is not supported by this operation")]
    DegreeUnsupported(usize),
    #[error("value is rational")]
    NotIrrational,
    #[error("leading coordinate is an integer; the expansion terminates")]
    IntegerLeadingCoordinate,
    #[error("no elementary factorization found within depth {0}")]
    NotFactorable(usize),
    #[error("expansion has too few digits for the requested length")]
    InsufficientDigits,
    #[error("matrix has negative entries")]
    NotNonNegative,
    #[error("trace form is singular")]
    SingularForm,
    #[error("iteration budget of {0} steps exhausted")]
    BudgetExhausted(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier used in structured output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::FieldMismatch => "FieldMismatch",
            Error::NotSquarefree => "NotSquarefree",
            Error::ReduciblePolynomial => "ReduciblePolynomial",
            Error::InvalidPolynomial(_) => "InvalidPolynomial",
            Error::NotHyperbolic => "NotHyperbolic",
            Error::NotUnimodular => "NotUnimodular",
            Error::NonPositiveEigenvector => "NonPositiveEigenvector",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotFound => "NotFound",
            Error::DegreeUnsupported(_) => "DegreeUnsupported",
            Error::NotIrrational => "NotIrrational",
            Error::IntegerLeadingCoordinate => "IntegerLeadingCoordinate",
            Error::NotFactorable(_) => "NotFactorable",
            Error::InsufficientDigits => "InsufficientDigits",
            Error::NotNonNegative => "NotNonNegative",
            Error::SingularForm => "SingularForm",
            Error::BudgetExhausted(_) => "BudgetExhausted",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
