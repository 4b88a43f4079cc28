// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the simulation and analysis layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid tensor factor index {index} for a space with {factors} factors")]
    InvalidFactor { index: usize, factors: usize },

    #[error("unknown basis label {label:?} for factor {factor:?}")]
    UnknownLabel { factor: String, label: String },

    #[error("negative evolution time {0}")]
    NegativeTime(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("conditioning on a null event (probability {0:e})")]
    NullEvent(f64),

    #[error("density operator is not normalized (trace {0})")]
    NotNormalized(f64),

    #[error("target state is not pure (purity {0})")]
    NotPure(f64),

    #[error("adaptive quadrature did not converge: error estimate {estimate:e} after {intervals} intervals")]
    Quadrature { estimate: f64, intervals: usize },

    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
