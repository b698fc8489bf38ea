use crate::scalar::Context;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error("context mismatch: {left} vs {right}")]
    ContextMismatch { left: Context, right: Context },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix is not unipotent")]
    NotUnipotent,

    #[error("degree overflow: degree {degree} exceeds order {order}")]
    DegreeOverflow { degree: usize, order: usize },

    #[error("curve coefficient has t-degree {degree}, bound is {bound}")]
    NonPolynomialCurve { degree: usize, bound: usize },

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),

    #[error("catalog entry `{0}` requires dim 1")]
    CatalogDim(String),

    #[error("operator is not a Sheffer operator")]
    NotSheffer,

    #[error("consistency violation: {0}")]
    Consistency(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Malformed input is a usage problem; everything else is a domain error.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_))
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn same_context(a: &Context, b: &Context) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ContextMismatch { left: *a, right: *b })
    }
}
