use thiserror::Error;

use crate::gluing::HandleKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix not unimodular (det = {det})")]
    NotUnimodular { det: i64 },

    #[error("handle kind mismatch: {left} vs {right}")]
    HandleMismatch { left: HandleKind, right: HandleKind },

    #[error("gluing datum does not fit a {dim}-dimensional {handle} handle")]
    GluingMismatch { dim: usize, handle: HandleKind },

    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),

    #[error("invalid sign {0}, expected +1 or -1")]
    InvalidSign(i64),

    #[error("invalid lens space L({p},{q})")]
    InvalidLens { p: i64, q: i64 },

    #[error("invalid manifold: {0}")]
    InvalidManifold(String),

    #[error("point is not reduced: {0}")]
    NotReduced(String),

    #[error("invalid simulation parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed flow spec: {0}")]
    MalformedSpec(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
