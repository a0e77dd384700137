//! Deletion-correcting codebooks and their decoders.
//!
//! A codebook with minimum pairwise deletion distance `ell` corrects
//! `ell - 1` deletions: every word of length `n - r`, `r <= ell - 1`, is a
//! subsequence of at most one codeword.

mod explicit;
mod vt;

pub use explicit::{brute_decode, greedy_codebook, BruteDecoder, MAX_GREEDY_LEN};
pub use vt::{
    vt_codebook, vt_decode, vt_encode, vt_message_bits, vt_syndrome, VtDecoder, MAX_VT_ENUM_LEN,
};

use serde::Serialize;
use thiserror::Error;

use crate::distance::distance_value;
use crate::word::{Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("expected a word of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("VT residue {a} out of range 0..={n}")]
    ResidueOutOfRange { n: usize, a: u64 },
    #[error("message index {index} out of range for {bits} message bits")]
    IndexOutOfRange { index: u64, bits: usize },
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("radius {r} exceeds the code's correction capability {capability}")]
    RadiusTooLarge { r: usize, capability: usize },
    #[error("{count} codewords contain {y}; the codebook is not {capability}-deletion-correcting")]
    MultipleMatches {
        y: Word,
        count: usize,
        capability: usize,
    },
    #[error("invalid codebook: {0}")]
    Invalid(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CodeKind {
    Vt { residue: u64 },
    Explicit,
}

/// A set of length-`n` codewords with pairwise deletion distance at least
/// `correctable + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    pub n: usize,
    pub correctable: usize,
    pub kind: CodeKind,
    codewords: Vec<Word>,
}

impl Codebook {
    /// Wraps `codewords` without checking distances; see
    /// [`Codebook::distance_violations`].
    pub fn new(n: usize, correctable: usize, kind: CodeKind, mut codewords: Vec<Word>) -> Result<Self, CodeError> {
        if let Some(bad) = codewords.iter().find(|c| c.len() != n) {
            return Err(CodeError::LengthMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        codewords.sort_unstable();
        codewords.dedup();
        Ok(Codebook {
            n,
            correctable,
            kind,
            codewords,
        })
    }

    pub fn codewords(&self) -> &[Word] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.codewords.binary_search(w).is_ok()
    }

    /// Minimum pairwise deletion distance the code guarantees.
    pub fn min_distance(&self) -> usize {
        self.correctable + 1
    }

    /// Pairs closer than [`Codebook::min_distance`]. Quadratic in the size.
    pub fn distance_violations(&self) -> Vec<(Word, Word)> {
        let floor = self.min_distance();
        let mut out = Vec::new();
        for (i, a) in self.codewords.iter().enumerate() {
            for b in &self.codewords[i + 1..] {
                if distance_value(a, b) < floor {
                    out.push((*a, *b));
                }
            }
        }
        out
    }

    /// One codeword per line.
    pub fn to_lines(&self) -> String {
        let mut s = String::with_capacity(self.len() * (self.n + 1));
        for c in &self.codewords {
            s.push_str(&c.to_string());
            s.push('\n');
        }
        s
    }

    /// Parses newline-separated bitstrings as an explicit codebook; blank
    /// lines are skipped.
    pub fn from_lines(text: &str, correctable: usize) -> Result<Self, CodeError> {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(Word::parse)
            .collect::<Result<Vec<_>, _>>()?;
        let n = words.first().map(Word::len).ok_or_else(|| CodeError::Invalid("no codewords".into()))?;
        Codebook::new(n, correctable, CodeKind::Explicit, words)
    }
}

/// Result of decoding one received word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DecodeOutcome {
    Codeword(Word),
    Failure,
}

impl DecodeOutcome {
    pub fn codeword(self) -> Option<Word> {
        match self {
            DecodeOutcome::Codeword(w) => Some(w),
            DecodeOutcome::Failure => None,
        }
    }
}

/// Maps a word with `radius()` deletions back to the codeword it came from.
pub trait Decoder {
    fn code_length(&self) -> usize;

    /// Number of deletions the decoder corrects.
    fn radius(&self) -> usize;

    /// Decodes a word of length `code_length() - radius()`. Returns
    /// `Codeword(x)` only when `y` is a subsequence of `x`.
    fn decode(&self, y: &Word) -> Result<DecodeOutcome, CodeError>;
}
