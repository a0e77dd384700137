//! Deletion-channel combinatorics over binary words.
//!
//! The crate covers deletion balls and their intersections, the deletion
//! distance, exhaustive computation of the largest ball intersection
//! `N(n, ell, t)` between words at distance at least `ell`, explicit extremal
//! constructions, deletion-correcting codes, and reconstruction of a codeword
//! from several distinct channel outputs.

pub mod ball;
pub mod codes;
pub mod construct;
pub mod distance;
pub mod recon;
pub mod search;
pub mod word;

pub use ball::{
    ball_size_max, binomial, count_ball, deletion_ball, intersection_size, is_subsequence, Ball,
    BallError, IntersectionRecord,
};
pub use construct::{alternating, construct_ab, construct_extremal_pair, ConstructError};
pub use distance::{deletion_distance, lcs_length, DistanceError, DistanceResult};
pub use word::{RunProfile, Word, WordError, CAPACITY};
pub use search::{
    compute_n_exhaustive, formula_n1, formula_n2, lower_bound, upper_bound, NQuery, NResult,
    NTable, SearchError, SearchOptions, Searcher,
};
pub use codes::{
    brute_decode, greedy_codebook, vt_codebook, vt_decode, vt_encode, vt_syndrome, BruteDecoder,
    CodeError, CodeKind, Codebook, DecodeOutcome, Decoder, VtDecoder,
};
pub use recon::{
    candidates_from_two_reads, collect_distinct_reads, deletion_channel, deletion_channel_seeded,
    longest_common_suffix, reconstruct, CandidatePair, ReadSet, ReconError,
};
