use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("operation needs a finite field")]
    InfiniteField,
    #[error("polynomial is reducible: {0}")]
    ReduciblePolynomial(String),
    #[error("structure constants are not associative: {0}")]
    NotAssociative(String),
    #[error("element lies in the base field")]
    ElementInBase,
    #[error("non-integral invariant: {0}")]
    NonIntegralInvariant(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("exactness failure: {0}")]
    ExactnessFailure(String),
    #[error("presentation mismatch: {0}")]
    PresentationMismatch(String),
    #[error("rewriting did not terminate within {0} steps")]
    NonTerminating(usize),
    #[error("degree bound exceeded: {0}")]
    DegreeBoundExceeded(String),
    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),
    #[error("incomplete prime data: {0}")]
    IncompletePrimeData(String),
    #[error("not defined: {0}")]
    NotDefined(String),
    #[error("no match: {0}")]
    NoMatch(String),
    #[error("undecided: {0}")]
    Unknown(String),
    #[error("not a division algebra: {0}")]
    NotDivisionAlgebra(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Variant name, used as a stable tag in JSON output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::Inconsistent => "Inconsistent",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::InfiniteField => "InfiniteField",
            Error::ReduciblePolynomial(_) => "ReduciblePolynomial",
            Error::NotAssociative(_) => "NotAssociative",
            Error::ElementInBase => "ElementInBase",
            Error::NonIntegralInvariant(_) => "NonIntegralInvariant",
            Error::UnsupportedShape(_) => "UnsupportedShape",
            Error::ExactnessFailure(_) => "ExactnessFailure",
            Error::PresentationMismatch(_) => "PresentationMismatch",
            Error::NonTerminating(_) => "NonTerminating",
            Error::DegreeBoundExceeded(_) => "DegreeBoundExceeded",
            Error::SearchSpaceTooLarge(_) => "SearchSpaceTooLarge",
            Error::IncompletePrimeData(_) => "IncompletePrimeData",
            Error::NotDefined(_) => "NotDefined",
            Error::NoMatch(_) => "NoMatch",
            Error::Unknown(_) => "Unknown",
            Error::NotDivisionAlgebra(_) => "NotDivisionAlgebra",
            Error::Parse(_) => "Parse",
            Error::Invalid(_) => "Invalid",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
