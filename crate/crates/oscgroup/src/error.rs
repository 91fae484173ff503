use std::path::PathBuf;

use oscgroup_core::{AlgebraError, CoeffError, FamilyError, NumericError};
use thiserror::Error;

/// Problems with the run configuration or input files; these map to exit
/// code 2.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected `name = value`")]
    Syntax { line: usize },
    #[error("line {line}: `{value}` is not a rational or decimal literal")]
    BadValue { line: usize, value: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("missing key `{0}`")]
    MissingKey(String),
    #[error("{0} must be positive")]
    NotPositive(&'static str),
    #[error("invalid value for {field}: {reason}")]
    Invalid { field: &'static str, reason: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Golden(#[from] GoldenError),
}

#[derive(Debug, Error)]
pub enum GoldenError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: `{word}` is not a canonical word")]
    NonCanonical { line: usize, word: String },
    #[error("line {line}: duplicate rule for {lhs}")]
    DuplicateRule { line: usize, lhs: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
