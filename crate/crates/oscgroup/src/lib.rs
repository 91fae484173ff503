//! Verification pipelines over `oscgroup-core`: parameter files, golden
//! relation files, structured reports and the command-line driver.

pub mod cli;
pub mod error;
pub mod golden;
pub mod params;
pub mod report;
pub mod suites;

pub use error::{ConfigError, GoldenError};
pub use report::{Check, Report, Residual, Status};
