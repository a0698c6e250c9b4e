//! Exact `ex(F, H)` and constructive extraction of pattern-free subfamilies.

mod extract;
mod pattern;
mod search;

pub use extract::{
    hfree_extract, homogeneous_extract, sunflower_extract, ExtractStep, HfreeResult, HomogeneousResult,
};
pub use pattern::{is_sunflower, Pattern, MAX_PATTERN_EDGES};
pub use search::{
    conflict_hypergraph, ex_exact, find_copy, max_independent_set, max_independent_spencer, ConflictHypergraph,
    IndependentSet, OracleResult, SpencerReport, MAX_SEARCH_VERTICES, MAX_SPENCER_VERTICES,
};
