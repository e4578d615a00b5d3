// SPDX-License-Identifier: MIT OR Apache-2.0

use thiserror::Error;

/// Errors raised by segmentation, metric and generator routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid signal: {0}")]
    InvalidSignal(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("infeasible k: {0}")]
    Infeasible(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("invalid change points: {0}")]
    InvalidChangePoints(String),
    #[error("window sliding found {found} selectable change points, {needed} required")]
    InsufficientPeaks { found: usize, needed: usize },
}

impl Error {
    pub(crate) fn infeasible(n: usize, k: usize, min_size: usize) -> Self {
        Error::Infeasible(format!("cannot split {n} points into {k} segments of at least {min_size} points"))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
