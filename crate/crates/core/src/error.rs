use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("form {0} is not positive definite")]
    NotPositiveDefinite(String),

    #[error("matrix {0} is not unimodular (determinant {1})")]
    NotUnimodular(String, String),

    #[error("form {0} is not primitive")]
    Imprimitive(String),

    #[error("form {0} has even discriminant {1}")]
    EvenDiscriminant(String, String),

    #[error("convenient shape precondition failed for {form}: {condition}")]
    ShapePrecondition { form: String, condition: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("bad sextuple field {field}: {message}")]
    Parse { field: String, message: String },

    #[error("work limit exceeded: {what} needs about {needed} operations, limit is {limit}")]
    ResourceLimit { what: String, needed: String, limit: u64 },

    #[error("density did not stabilize at exponent {t}: {at_t} vs {at_next}")]
    NotStabilized { t: u32, at_t: String, at_next: String },

    #[error("incomplete enumeration for {label} p={p}: mass {found}, expected {expected}")]
    Incomplete { label: String, p: u64, found: String, expected: String },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
