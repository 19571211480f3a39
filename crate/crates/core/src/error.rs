use thiserror::Error;

/// Errors raised by the library.
///
/// The variants split into two groups: input problems (`Parameter`,
/// `Domain`, `Capability`, `Divergence`, `Ingestion`) and numerical problems
/// met while evaluating (`Evaluation`). The CLI maps the first group to exit
/// code 1 and the second to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("capability error: {0}")]
    Capability(String),

    #[error("divergence error: {0}")]
    Divergence(String),

    #[error("ingestion error in `{field}`: {reason}")]
    Ingestion { field: String, reason: String },

    #[error("evaluation error at {location}: {reason}")]
    Evaluation { location: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn eval(location: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Evaluation {
            location: location.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn ingest(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Ingestion {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// True for errors that stem from numerical evaluation rather than bad input.
    pub fn is_evaluation(&self) -> bool {
        matches!(self, Error::Evaluation { .. })
    }
}

/// Fails with an evaluation error when `value` is NaN or infinite.
pub(crate) fn check_finite(value: f64, location: impl FnOnce() -> String) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::eval(location(), format!("non-finite value {value}")))
    }
}
