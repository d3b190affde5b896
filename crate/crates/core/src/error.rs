use thiserror::Error;

use crate::polyring::PolyError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{what} = {index} outside {lo}..={hi}")]
    IndexOutOfRange {
        what: &'static str,
        index: i64,
        lo: i64,
        hi: i64,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("invalid sweep: {0}")]
    SpecInvalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
