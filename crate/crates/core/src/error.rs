use thiserror::Error;

use crate::diagram::BoxAddr;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid label sets: {0}")]
    Labels(String),
    #[error("column {0} is not a column label")]
    InvalidColumn(u32),
    #[error("row {0} is not a row label")]
    InvalidRow(i32),
    #[error("label 1 must be a positive label or a boundary column")]
    Unanchored,
    #[error("box {0} is outside the working region")]
    OutsideRegion(BoxAddr),
    #[error("boxes {0} and {1} are not in one column")]
    NotSameColumn(BoxAddr, BoxAddr),
    #[error("{0}")]
    Violation(#[from] crate::tableau::Violation),
    #[error("no rule applies at box {0}")]
    NoRule(BoxAddr),
    #[error("more than one star in column {0}")]
    TooManyStars(u32),
    #[error("interior column {0} has neither a qualifying zero nor a star")]
    NoCompletion(u32),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("trace does not belong to this tableau")]
    TraceMismatch,
}
