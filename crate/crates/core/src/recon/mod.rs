//! Reconstruction of a codeword from distinct outputs of the `t`-deletion
//! channel.
//!
//! Two reads `y1 = a1 0 u`, `y2 = a2 1 u` (with `u` their longest common
//! suffix) determine two candidates `a1 0 1 u` and `a2 1 0 u` of length
//! `n - t + 1`, at least one of which lies in the radius-`(t-1)` ball of the
//! transmitted word. Decoding both with a `(t-1)`-deletion decoder and
//! keeping the codeword that contains every read recovers the input, as long
//! as no two codewords share as many reads as were collected.

mod channel;
mod harness;

pub use channel::{collect_distinct_reads, deletion_channel, deletion_channel_seeded};
pub use harness::{
    certify_read_count, run_on_codeword, run_trials, summarize, TrialCode, TrialConfig,
    TrialRecord, TrialSummary, MAX_CERTIFY_LEN,
};

use serde::Serialize;
use thiserror::Error;

use crate::ball::is_subsequence;
use crate::codes::{CodeError, Decoder};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconError {
    #[error("cannot delete {t} bits from a word of length {len}")]
    RadiusOutOfRange { t: usize, len: usize },
    #[error("the deletion ball holds only {available} distinct reads, {requested} requested")]
    InsufficientDiversity { available: u64, requested: usize },
    #[error("drew {draws} channel outputs but found only {found} of {requested} distinct reads")]
    DrawBudgetExhausted {
        draws: usize,
        found: usize,
        requested: usize,
    },
    #[error("the two reads are identical")]
    EqualReads,
    #[error("reads have different lengths ({0} and {1})")]
    ReadLengthMismatch(usize, usize),
    #[error("duplicate read {0}")]
    DuplicateRead(Word),
    #[error("need at least 2 reads, got {0}")]
    TooFewReads(usize),
    #[error("decoder expects words of length {expected}, candidates have length {got}")]
    DecoderMismatch { expected: usize, got: usize },
    #[error("both candidates failed to decode; the reads do not come from this code")]
    BothDecodesFailed,
    #[error("no decoded candidate contains every read")]
    Inconsistent,
    #[error("codewords {0} and {1} both contain every read; too few reads for this code")]
    HypothesisViolation(Word, Word),
    #[error("pairwise certification limited to n <= {max}, got {n}")]
    CertificationTooLarge { n: usize, max: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Distinct, equal-length outputs of a `t`-deletion channel applied to a
/// length-`n` word, in the order they were received.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReadSet {
    pub n: usize,
    pub t: usize,
    reads: Vec<Word>,
}

impl ReadSet {
    pub fn new(n: usize, t: usize, reads: Vec<Word>) -> Result<Self, ReconError> {
        if t > n {
            return Err(ReconError::RadiusOutOfRange { t, len: n });
        }
        let mut seen = std::collections::HashSet::with_capacity(reads.len());
        for r in &reads {
            if r.len() + t != n {
                return Err(ReconError::ReadLengthMismatch(r.len(), n - t));
            }
            if !seen.insert(*r) {
                return Err(ReconError::DuplicateRead(*r));
            }
        }
        Ok(ReadSet { n, t, reads })
    }

    pub fn reads(&self) -> &[Word] {
        &self.reads
    }

    pub fn len(&self) -> usize {
        self.reads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reads.is_empty()
    }
}

/// The two reconstruction candidates built from a pair of reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CandidatePair {
    /// `a1 0 1 u`, from the read whose bit before `u` is 0
    pub c1: Word,
    /// `a2 1 0 u`, from the read whose bit before `u` is 1
    pub c2: Word,
    pub u: Word,
}

/// The longest `u` with `y1 = a1 u` and `y2 = a2 u`.
pub fn longest_common_suffix(y1: &Word, y2: &Word) -> Word {
    let m = y1.len().min(y2.len());
    let diff = (y1.bits() ^ y2.bits()) & crate::word::mask(m);
    let common = if diff == 0 { m } else { diff.trailing_zeros() as usize };
    y1.suffix(common).expect("suffix within length")
}

pub fn candidates_from_two_reads(y1: &Word, y2: &Word) -> Result<CandidatePair, ReconError> {
    if y1.len() != y2.len() {
        return Err(ReconError::ReadLengthMismatch(y1.len(), y2.len()));
    }
    if y1 == y2 {
        return Err(ReconError::EqualReads);
    }
    let u = longest_common_suffix(y1, y2);
    let cut = y1.len() - u.len(); // position of the differing bit, 1-based
    let (zero_read, one_read) = if y1.bit(cut) == 0 { (y1, y2) } else { (y2, y1) };
    let a1 = zero_read.prefix_unchecked(cut - 1);
    let a2 = one_read.prefix_unchecked(cut - 1);
    let build = |a: Word, first: u8| -> Result<Word, ReconError> {
        Ok(a.push(first)
            .and_then(|w| w.push(first ^ 1))
            .and_then(|w| w.concat(&u))
            .map_err(CodeError::from)?)
    };
    Ok(CandidatePair {
        c1: build(a1, 0)?,
        c2: build(a2, 1)?,
        u,
    })
}

/// Recovers the transmitted codeword from `rs`.
///
/// Candidates come from the first two reads. Each decoded candidate is
/// checked against every read; exactly one distinct codeword must survive.
/// Runs in `O(T(n) + M n)` for a decoder costing `T(n)`.
pub fn reconstruct<D: Decoder + ?Sized>(rs: &ReadSet, decoder: &D) -> Result<Word, ReconError> {
    let reads = rs.reads();
    if reads.len() < 2 {
        return Err(ReconError::TooFewReads(reads.len()));
    }
    let expected = decoder.code_length() - decoder.radius();
    let got = reads[0].len() + 1;
    if expected != got {
        return Err(ReconError::DecoderMismatch { expected, got });
    }
    let pair = candidates_from_two_reads(&reads[0], &reads[1])?;
    let x1 = decoder.decode(&pair.c1)?.codeword();
    let x2 = decoder.decode(&pair.c2)?.codeword();
    let mut decoded: Vec<Word> = [x1, x2].into_iter().flatten().collect();
    if decoded.is_empty() {
        return Err(ReconError::BothDecodesFailed);
    }
    decoded.dedup();
    let consistent: Vec<Word> = decoded
        .into_iter()
        .filter(|x| reads.iter().all(|y| is_subsequence(y, x)))
        .collect();
    match consistent.as_slice() {
        [] => Err(ReconError::Inconsistent),
        [x] => Ok(*x),
        [a, b, ..] => Err(ReconError::HypothesisViolation(*a, *b)),
    }
}
