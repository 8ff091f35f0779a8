use thiserror::Error;

/// Errors raised across the crate.
///
/// The variants split into three families that callers (notably the CLI)
/// map onto distinct exit codes: bad input, an unmet hypothesis of the
/// factorization, and a numerical or structural check that failed.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("graph is disconnected: no path from vertex {from} to vertex {to}")]
    Disconnected { from: usize, to: usize },

    #[error("graph is not distance-regular")]
    NotDistanceRegular,

    #[error("adjacency matrix singular (eigenvalue {eigenvalue:.3e} is zero within tolerance)")]
    SingularAdjacency { eigenvalue: f64 },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("identity violated: {what} (defect {defect:.3e}, tolerance {tol:.1e})")]
    Violation { what: String, defect: f64, tol: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    /// True when the error means the input does not satisfy a hypothesis
    /// (bad data, not distance-regular, singular adjacency) rather than a
    /// failed numerical or structural check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Validation(_)
                | Error::Disconnected { .. }
                | Error::NotDistanceRegular
                | Error::SingularAdjacency { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fails with [`Error::Violation`] unless `defect < tol`.
pub(crate) fn ensure_below(what: &str, defect: f64, tol: f64) -> Result<()> {
    if defect < tol {
        Ok(())
    } else {
        Err(Error::Violation {
            what: what.to_string(),
            defect,
            tol,
        })
    }
}
