//! Advice construction for minimum-time election.

mod advice;
mod build;
mod label;
mod trie;

pub use advice::{compute_advice, Advice};
pub use build::{build_trie, discriminatory_index, TrieRecord};
pub use label::{local_label, Labeler};
pub use trie::{DepthTries, NestedList, Trie};

use thiserror::Error;

use crate::encoding::EncodingError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("infeasible graph")]
    Infeasible,
    #[error("advice has no trie list for depth {0}")]
    MissingDepth(usize),
    #[error("query {query:?} out of range for a sequence of length {len}")]
    QueryOutOfRange { query: (u64, u64), len: usize },
    #[error("query {0:?} cannot be applied to a depth-1 code")]
    BadQuery((u64, u64)),
    #[error("labels are defined for views of depth at least 1")]
    DepthZero,
    #[error("{0}")]
    Internal(String),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
}
