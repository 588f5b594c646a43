use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("ill-defined map: relation `{relation}` is sent to `{image}`")]
    IllDefined { relation: String, image: String },
    #[error("invalid point: relation `{0}` does not vanish")]
    InvalidPoint(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("Gröbner step budget of {0} S-polynomial reductions exceeded")]
    BudgetExceeded(u64),
    #[error("syntax error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("cone does not commute: {0}")]
    Cone(String),
    #[error("not in split form: {0}")]
    NotSplitForm(String),
    #[error("not a pre-differential bundle: {0}")]
    NotPreDifferential(String),
    #[error("not a differential bundle: {0}")]
    InvalidBundle(String),
    #[error("not a vector field: {0}")]
    NotVectorField(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
