use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input (unknown symbol, empty set, wrong arity).
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A configured enumeration budget would be exceeded.
    #[error("{what} exceeds budget of {budget}")]
    Budget { what: String, budget: u64 },

    #[error("unsupported presentation: {0}")]
    UnsupportedPresentation(String),

    /// Parameters outside the range where a family or formula is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("no conjugator of length <= {radius} breaks commutation")]
    SearchExhausted { radius: usize },

    #[error("word is not in the subgroup: {0}")]
    Membership(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("length {length} exceeds constant bound {bound}")]
    ConstantViolation { length: usize, bound: u64 },

    #[error("field mismatch: {0}")]
    FieldMismatch(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn budget(what: impl Into<String>, budget: u64) -> Self {
        Error::Budget {
            what: what.into(),
            budget,
        }
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Short machine-readable kind, used for structured error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Parse { .. } => "parse",
            Error::Budget { .. } => "budget",
            Error::UnsupportedPresentation(_) => "unsupported-presentation",
            Error::Domain(_) => "domain",
            Error::SearchExhausted { .. } => "search-exhausted",
            Error::Membership(_) => "membership",
            Error::Precondition(_) => "precondition",
            Error::ConstantViolation { .. } => "constant-violation",
            Error::FieldMismatch(_) => "field-mismatch",
        }
    }
}
