use thiserror::Error;

/// Errors raised by the laboratory.
///
/// The variants mirror the exit-code classes of the command-line driver:
/// `Domain` and `Regime` are validation failures, `Numerical` is a failure
/// of an algorithm on otherwise valid input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("no stationary solution in this regime: {0}")]
    Regime(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn regime(msg: impl Into<String>) -> Self {
        Error::Regime(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
