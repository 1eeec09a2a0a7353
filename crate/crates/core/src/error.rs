use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the numeric layers and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error in {func}: {msg}")]
    Domain { func: &'static str, msg: String },

    #[error("index out of range in {func}: {msg}")]
    Index { func: &'static str, msg: String },

    #[error("unsupported sphere dimension d={d} for {func} (closed forms exist for d=2 only)")]
    UnsupportedDimension { func: &'static str, d: usize },

    #[error("precondition violated in {func}: {msg}")]
    Precondition { func: &'static str, msg: String },

    #[error("duplicate high-order scales a[{i}]={a_i} and a[{j}]={a_j}")]
    DuplicateScale { i: usize, j: usize, a_i: f64, a_j: f64 },

    #[error("invalid kernel specification `{spec}`: {msg}")]
    KernelSpec { spec: String, msg: String },

    #[error("{path}:{line}: malformed row: {msg}")]
    MalformedRow { path: PathBuf, line: usize, msg: String },

    #[error("{path}:{line}: nonpositive weight {weight}")]
    NonPositiveWeight { path: PathBuf, line: usize, weight: f64 },

    #[error("{path}:{line}: point is off the unit sphere (|x| = {norm})")]
    OffSphere { path: PathBuf, line: usize, norm: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(func: &'static str, msg: impl Into<String>) -> Error {
    Error::Domain { func, msg: msg.into() }
}
