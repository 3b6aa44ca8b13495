use thiserror::Error;

/// Errors produced by the numerical routines and the command-line layer.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation at a point where the closed form is singular.
    #[error("singularity: {0}")]
    Singularity(String),

    /// Inconsistent numerical configuration (grid, radius, truncation).
    #[error("configuration error: {0}")]
    Config(String),

    /// The requested accuracy could not be reached.
    #[error("accuracy error: requested {requested:e}, achieved {achieved:e}")]
    Accuracy { requested: f64, achieved: f64 },

    /// Input function has the wrong parity for an even/odd-only transform.
    #[error("parity error: {0}")]
    Parity(String),

    /// Input function is not negligible at the edge of its grid.
    #[error("support error: {0}")]
    Support(String),

    /// Truncated integrals leave a tail above tolerance.
    #[error("truncation error: {0}")]
    Truncation(String),

    /// Operation only implemented for some weight families.
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    /// Internal cross-check failed.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// Weight family violates an admissibility hypothesis.
    #[error("inadmissible weight: {0}")]
    Inadmissible(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
