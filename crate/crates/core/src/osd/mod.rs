//! Order-p OSD syndrome reprocessing used as a codeword harvester.
//!
//! Each trial decodes a noisy all-zero transmission with BP, orders the bits
//! by accumulated reliability, puts the least reliable independent columns of
//! `H` into a basis and enumerates every error pattern consistent with the
//! decoder's syndrome that flips at most `p` information bits. Two such
//! patterns differ by a codeword, so XORing the lightest pattern with the rest
//! yields light codewords. The lightest ones across all trials are kept.

mod candidates;
mod reprocess;
mod search;

pub use candidates::CandidateList;
pub use reprocess::{
    build_permutations, enumerate_patterns, harvest_codewords, harvest_pairs, pattern_count,
    ErrorPattern, PermutationPair,
};
pub use search::{
    run_search, run_search_with, run_trial, Progress, RunOptions, SearchConfig, SearchReport,
    TrialOutcome, TrialRecord,
};
