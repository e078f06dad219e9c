use std::path::PathBuf;

use crate::ItemId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("no rows")]
    NoRows,
    #[error("row {row}: expected {expected} columns, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}, column {column}: cannot parse {cell:?} as a number")]
    NonNumeric {
        row: usize,
        column: usize,
        cell: String,
    },
    #[error("row {row}: non-finite value")]
    NonFinite { row: usize },
    #[error("cannot subsample {requested} items from a dataset of {available}")]
    SubsampleTooLarge { requested: usize, available: usize },
    #[error("unknown item {0}")]
    UnknownItem(ItemId),
    #[error("item {0} is already in the set")]
    ItemInSet(ItemId),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("instance too large for exhaustive search: {count} candidate sets exceed the limit of {limit}")]
    InstanceTooLarge { count: u128, limit: u128 },
    #[error("capacity {mu} must exceed k = {k}")]
    CapacityNotAboveK { k: usize, mu: usize },
    #[error("capacity violation: {needed} items would be placed on a machine of capacity {mu}")]
    CapacityViolation { needed: usize, mu: usize },
    #[error("no termination after {rounds} rounds")]
    RoundGuard { rounds: usize },
    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}
