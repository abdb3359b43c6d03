use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain documented for the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An e-process was updated after its stopping time fired.
    #[error("e-process already stopped at step {0}; further updates are rejected")]
    AlreadyStopped(usize),

    /// The power e-value a·p^(a-1) diverges when p = 0; the caller should
    /// treat the result as the +infinity sentinel.
    #[error("e-value diverges to +infinity: p-value is zero")]
    DivergentEValue,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }
}
