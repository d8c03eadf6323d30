use thiserror::Error;

/// Every failure the library can report.
///
/// Variants split into two families: input problems (malformed data, wrong
/// shapes, schema violations) and mathematical refusals (the input is well
/// formed but the requested object does not exist, e.g. an element outside
/// the derived subgroup). [`Error::is_refusal`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus is not an irreducible monic polynomial of the requested degree")]
    ReducibleModulus,
    #[error("field order {0} exceeds the supported cap")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("field has too few elements for this operation (need at least {0})")]
    FieldTooSmall(u32),
    #[error("element coordinates out of range for the field")]
    InvalidElement,

    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("dimension {0} exceeds the supported cap")]
    DimensionCap(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("element is not unipotent")]
    NotUnipotent,
    #[error("matrix does not have determinant 1")]
    NotSL,
    #[error("matrix is central and not the identity")]
    CentralNonIdentity,
    #[error("unipotent index {0} exceeds 2")]
    IndexTooHigh(usize),

    #[error("group table is not associative")]
    NotAssociative,
    #[error("group table has no identity")]
    NoIdentity,
    #[error("group table has an element without inverse")]
    NoInverse,
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("group order exceeds cap {0}")]
    OrderCapExceeded(usize),
    #[error("unknown catalog group `{0}`")]
    UnknownGroup(String),
    #[error("cocycle identity fails at ({0}, {1}, {2})")]
    CocycleIdentityFails(usize, usize, usize),
    #[error("cocycle is not normalized")]
    NotNormalized,
    #[error("cocycle takes the value zero")]
    ZeroValue,

    #[error("element is not a unit")]
    NotAUnit,
    #[error("algebra is not semisimple")]
    NotSemisimple,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("element is not in the derived subgroup")]
    NotInDerived,
    #[error("element is not in the Jacobson radical")]
    NotInRadical,
    #[error("enumeration of {0} elements exceeds the cap")]
    EnumerationCap(u64),
    #[error("randomized search failed: {0}")]
    SearchFailed(String),

    #[error("schema error: {0}")]
    Schema(String),
    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonPrime(_) => "NonPrime",
            Error::ReducibleModulus => "ReducibleModulus",
            Error::FieldTooLarge(_) => "FieldTooLarge",
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::FieldTooSmall(_) => "FieldTooSmall",
            Error::InvalidElement => "InvalidElement",
            Error::NotSquare => "NotSquare",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::DimensionCap(_) => "DimensionCap",
            Error::Singular => "Singular",
            Error::NotUnipotent => "NotUnipotent",
            Error::NotSL => "NotSL",
            Error::CentralNonIdentity => "CentralNonIdentity",
            Error::IndexTooHigh(_) => "IndexTooHigh",
            Error::NotAssociative => "NotAssociative",
            Error::NoIdentity => "NoIdentity",
            Error::NoInverse => "NoInverse",
            Error::InvalidTable(_) => "InvalidTable",
            Error::OrderCapExceeded(_) => "OrderCapExceeded",
            Error::UnknownGroup(_) => "UnknownGroup",
            Error::CocycleIdentityFails(..) => "CocycleIdentityFails",
            Error::NotNormalized => "NotNormalized",
            Error::ZeroValue => "ZeroValue",
            Error::NotAUnit => "NotAUnit",
            Error::NotSemisimple => "NotSemisimple",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::NotInDerived => "NotInDerived",
            Error::NotInRadical => "NotInRadical",
            Error::EnumerationCap(_) => "EnumerationCap",
            Error::SearchFailed(_) => "SearchFailed",
            Error::Schema(_) => "SchemaError",
            Error::CertificateInvalid(_) => "CertificateInvalid",
        }
    }

    /// True when the input was well formed and the mathematics says no.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            Error::Singular
                | Error::NotUnipotent
                | Error::NotSL
                | Error::CentralNonIdentity
                | Error::IndexTooHigh(_)
                | Error::NotAUnit
                | Error::NotSemisimple
                | Error::NotInDerived
                | Error::NotInRadical
                | Error::FieldTooSmall(_)
                | Error::HypothesisViolated(_)
                | Error::CertificateInvalid(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
