use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("laguerre parameter alpha = {alpha} is not admissible for degree {degree}: need alpha > -1 or alpha = k - degree with 0 <= k < degree")]
    InadmissibleAlpha { degree: usize, alpha: f64 },

    #[error("eigensolver failed to converge: {0}")]
    NoConvergence(String),

    #[error("eigenpair residual {residual:e} exceeds {bound:e}")]
    Residual { residual: f64, bound: f64 },

    #[error("curve: {0}")]
    Curve(String),

    #[error("weight: {0}")]
    Weight(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
