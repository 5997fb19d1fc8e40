//! Shared string machinery: suffix arrays, longest-common-extension queries,
//! lexicographic substring ranking, compacted tries with incremental spelling,
//! heavy-light decomposition, and the one-error substring-matching kernel.

mod hld;
mod onesm;
mod sa;
mod trie;

pub use hld::{heavy_light, light_edge_bound, Hld};
pub use onesm::{one_mismatch_sm, one_sm, z_array};
pub use sa::{build_lce, lcp_array, sorted_substrings, suffix_array, Lce, LceIndex};
pub use trie::{CompactedTrie, Speller};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeqError {
    #[error("substring interval {start}..{end} out of bounds for string of length {len}")]
    IntervalOutOfBounds {
        start: usize,
        end: usize,
        len: usize,
    },
}
