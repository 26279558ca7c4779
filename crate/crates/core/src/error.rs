use thiserror::Error;

/// Errors raised by the propagation, link-budget and waveform engines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A request that would need more resources than the configured cap.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Inconsistent or incomplete configuration (scenario, population, catalog).
    #[error("configuration error: {0}")]
    Config(String),

    /// A frequency outside the coverage of a model or data table.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// Array or grid shapes do not match.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Layer shares requested for a breakdown with no medium-induced loss.
    #[error("undefined share: {0}")]
    UndefinedShare(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

/// Fails with a domain error unless `value` is finite and strictly positive.
pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite and > 0, got {value}")))
    }
}

pub(crate) fn ensure_non_negative(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite and >= 0, got {value}")))
    }
}
