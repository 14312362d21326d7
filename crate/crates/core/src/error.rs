use thiserror::Error;

/// Errors raised by the propagation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A special function was called outside its argument range.
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    /// A model parameter is out of range (non-positive rate, empty grid, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A closed-form solution was requested outside the regime in which it holds.
    #[error("validity condition violated: {0}")]
    Validity(String),

    /// The requested waveform/medium/method pairing has no closed form.
    #[error("unsupported combination: {0}")]
    Unsupported(String),

    /// An adaptive quadrature or the spectral propagator failed to converge.
    #[error("no convergence: {0}")]
    NonConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }
}
