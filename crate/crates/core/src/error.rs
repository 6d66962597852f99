use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A numeric argument lies outside the domain of the formula.
    #[error("{quantity} out of domain: {detail}")]
    Domain { quantity: &'static str, detail: String },

    /// A structured value (scenario, aperture, catalog entry) violates an invariant.
    #[error("invalid {field}: {detail}")]
    Invalid { field: String, detail: String },

    /// An iterative solver could not produce a result.
    #[error("solver failure: {0}")]
    Solver(String),
}

impl Error {
    pub(crate) fn domain(quantity: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            quantity,
            detail: detail.into(),
        }
    }

    pub(crate) fn invalid(field: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            detail: detail.into(),
        }
    }

    pub fn is_solver(&self) -> bool {
        matches!(self, Error::Solver(_))
    }
}
