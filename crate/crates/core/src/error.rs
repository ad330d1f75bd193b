use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },

    #[error("genus must be at least 1 (got {0})")]
    InvalidGenus(usize),

    #[error("index {index} out of range for genus {genus}")]
    IndexOutOfRange { index: usize, genus: usize },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("arc leaves the cover window of radius {radius}; use a larger radius")]
    WindowOverflow { radius: i32 },

    #[error("window radius {radius} too small: translate {translate} contributes on the outer shell")]
    WindowTooSmall { radius: i32, translate: String },

    #[error("arcs share an endpoint mark; push one of them off the basepoint")]
    SharedEndpoint,

    #[error("invalid pairing table: {0}")]
    InvalidTable(String),

    /// Two independent routes disagreed. Always a bug in this crate.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// Errors caused by malformed input (syntax, shapes, indices) rather than
    /// by a mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::GenusMismatch { .. }
                | Error::InvalidGenus(_)
                | Error::IndexOutOfRange { .. }
                | Error::Parse { .. }
                | Error::Json(_)
        )
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub(crate) fn check_genus(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::GenusMismatch { left, right })
    }
}

pub(crate) fn check_valid_genus(genus: usize) -> Result<()> {
    if genus == 0 {
        Err(Error::InvalidGenus(genus))
    } else {
        Ok(())
    }
}
