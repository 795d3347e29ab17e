use num_complex::Complex64;
use thiserror::Error;

/// Every failure the laboratory can report.
///
/// Divergences and poles are ordinary values of this type rather than
/// infinities, so callers can tell a structural divergence from overflow.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("regulator {0} is not supported by this operation")]
    UnsupportedRegulator(&'static str),

    #[error("{quantity} diverges for the unregulated contact interaction")]
    Divergent { quantity: &'static str },

    #[error("singular input: {0}")]
    Singular(String),

    #[error("amplitude pole at z = {pole}")]
    Pole { pole: Complex64 },

    #[error("no bound state{}", if *.theorem { " (unregulated contact interaction neither binds nor scatters)" } else { "" })]
    NoBoundState { theorem: bool },

    #[error("unitarity violation: defect {defect:e}")]
    UnitarityViolation { defect: f64 },

    #[error("quadrature tolerance not met: estimate {estimate}, error {error:e}")]
    Precision { estimate: Complex64, error: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
