use thiserror::Error;

/// Errors raised by state construction, witnesses and measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QcsError {
    /// An argument fell outside the domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// The amplitude vector is empty, non-finite, or too far from unit norm to
    /// be renormalized silently.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// The Agarwal-Tara denominator `det mu - det m` vanished.
    #[error("singular moment matrix: det(mu) - det(m) = {denominator:e}")]
    SingularMomentMatrix { denominator: f64 },
}

impl QcsError {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        QcsError::Domain {
            op,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, QcsError>;
