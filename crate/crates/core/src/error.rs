// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::Round;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad arguments: out-of-range ids, round 0, empty sets, bad probabilities.
    #[error("usage error: {0}")]
    Usage(String),

    /// Input data violates a structural requirement (e.g. a disconnected graph).
    #[error("validation error: {0}")]
    Validation(String),

    /// A round past the end of a finite schedule was requested.
    #[error("round {round} is past the schedule horizon {horizon}")]
    Horizon { round: Round, horizon: Round },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// True for errors caused by the caller's arguments or input data,
    /// as opposed to I/O or runtime failures.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Usage(_) | Error::Validation(_) | Error::Parse(_))
    }
}
