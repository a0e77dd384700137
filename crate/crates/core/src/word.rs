//! Packed binary words.
//!
//! A [`Word`] holds up to [`CAPACITY`] bits in a single `u64`. The first bit
//! `x_1` is the most significant of the `len` used bits, so the integer value
//! of a word coincides with the binary numeral it spells and integer order on
//! words of equal length is lexicographic order on their strings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Maximum number of bits a [`Word`] can hold.
pub const CAPACITY: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid character {ch:?} at position {pos} (expected '0' or '1')")]
    InvalidChar { ch: char, pos: usize },
    #[error("length {0} exceeds the {CAPACITY}-bit word capacity")]
    OverCapacity(usize),
    #[error("index {index} out of range for a word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// An immutable binary sequence of length at most 64.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    // Field order matters: derived `Ord` compares by length first.
    len: u8,
    bits: u64,
}

#[inline]
pub(crate) fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

#[inline]
fn shl(value: u64, by: usize) -> u64 {
    if by >= 64 {
        0
    } else {
        value << by
    }
}

#[inline]
fn shr(value: u64, by: usize) -> u64 {
    if by >= 64 {
        0
    } else {
        value >> by
    }
}

impl Word {
    /// The empty word.
    pub const EMPTY: Word = Word { len: 0, bits: 0 };

    /// Builds a word from the low `len` bits of `bits`; the first bit is
    /// bit `len - 1` of the value. Higher bits are discarded.
    pub fn from_bits(bits: u64, len: usize) -> Result<Self, WordError> {
        if len > CAPACITY {
            return Err(WordError::OverCapacity(len));
        }
        Ok(Word::from_bits_unchecked(bits, len))
    }

    #[inline]
    pub(crate) fn from_bits_unchecked(bits: u64, len: usize) -> Self {
        debug_assert!(len <= CAPACITY);
        Word {
            len: len as u8,
            bits: bits & mask(len),
        }
    }

    pub fn from_bools(bools: &[bool]) -> Result<Self, WordError> {
        if bools.len() > CAPACITY {
            return Err(WordError::OverCapacity(bools.len()));
        }
        let bits = bools.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        Ok(Word::from_bits_unchecked(bits, bools.len()))
    }

    /// Parses a string of `'0'`/`'1'` characters.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let mut bits = 0u64;
        let mut len = 0usize;
        for (pos, ch) in text.chars().enumerate() {
            let b = match ch {
                '0' => 0,
                '1' => 1,
                _ => return Err(WordError::InvalidChar { ch, pos }),
            };
            len += 1;
            if len > CAPACITY {
                return Err(WordError::OverCapacity(text.chars().count()));
            }
            bits = (bits << 1) | b;
        }
        Ok(Word::from_bits_unchecked(bits, len))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed value; see the module docs for the bit layout.
    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// The bit `x_i`, 1-based.
    ///
    /// # Panics
    /// If `i` is zero or greater than the length.
    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        assert!(
            i >= 1 && i <= self.len(),
            "bit index {i} out of range 1..={}",
            self.len
        );
        ((self.bits >> (self.len() - i)) & 1) as u8
    }

    /// The last bit `x_n`, or `None` for the empty word.
    #[inline]
    pub fn last(&self) -> Option<u8> {
        (self.len > 0).then_some((self.bits & 1) as u8)
    }

    #[inline]
    pub fn first(&self) -> Option<u8> {
        (self.len > 0).then(|| self.bit(1))
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u8> + ExactSizeIterator + '_ {
        (0..self.len()).map(move |i| self.bit(i + 1))
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// The length-`i` prefix `x^(i)`.
    pub fn prefix(&self, i: usize) -> Result<Word, WordError> {
        if i > self.len() {
            return Err(WordError::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(self.prefix_unchecked(i))
    }

    #[inline]
    pub(crate) fn prefix_unchecked(&self, i: usize) -> Word {
        Word::from_bits_unchecked(shr(self.bits, self.len() - i), i)
    }

    /// Everything after the first `i` bits.
    pub fn suffix_from(&self, i: usize) -> Result<Word, WordError> {
        if i > self.len() {
            return Err(WordError::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        Ok(Word::from_bits_unchecked(self.bits, self.len() - i))
    }

    /// The last `m` bits.
    pub fn suffix(&self, m: usize) -> Result<Word, WordError> {
        if m > self.len() {
            return Err(WordError::IndexOutOfRange {
                index: m,
                len: self.len(),
            });
        }
        Ok(Word::from_bits_unchecked(self.bits, m))
    }

    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        let len = self.len() + other.len();
        if len > CAPACITY {
            return Err(WordError::OverCapacity(len));
        }
        Ok(Word::from_bits_unchecked(
            shl(self.bits, other.len()) | other.bits,
            len,
        ))
    }

    /// Appends one bit.
    pub fn push(&self, bit: u8) -> Result<Word, WordError> {
        if self.len() == CAPACITY {
            return Err(WordError::OverCapacity(CAPACITY + 1));
        }
        Ok(Word::from_bits_unchecked(
            (self.bits << 1) | (bit & 1) as u64,
            self.len() + 1,
        ))
    }

    pub fn complement(&self) -> Word {
        Word::from_bits_unchecked(!self.bits, self.len())
    }

    pub fn reverse(&self) -> Word {
        if self.len == 0 {
            return *self;
        }
        Word::from_bits_unchecked(self.bits.reverse_bits() >> (64 - self.len()), self.len())
    }

    /// Removes the bit at 1-based position `i`.
    pub fn delete(&self, i: usize) -> Result<Word, WordError> {
        if i == 0 || i > self.len() {
            return Err(WordError::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        let tail_len = self.len() - i;
        let head = shr(self.bits, tail_len + 1);
        let tail = self.bits & mask(tail_len);
        Ok(Word::from_bits_unchecked(
            shl(head, tail_len) | tail,
            self.len() - 1,
        ))
    }

    /// Removes the bits at the given 1-based positions, listed in increasing order.
    pub(crate) fn delete_positions(&self, deleted: &[usize]) -> Word {
        let mut out = 0u64;
        let mut len = 0usize;
        let mut d = deleted.iter().peekable();
        for i in 1..=self.len() {
            if d.peek() == Some(&&i) {
                d.next();
                continue;
            }
            out = (out << 1) | self.bit(i) as u64;
            len += 1;
        }
        Word::from_bits_unchecked(out, len)
    }

    pub fn runs(&self) -> RunProfile {
        RunProfile::of(self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Run statistics of a word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunProfile {
    pub run_count: usize,
    pub run_lengths: Vec<usize>,
}

impl RunProfile {
    pub fn of(w: &Word) -> Self {
        let mut run_lengths = Vec::new();
        let mut prev = None;
        for b in w.iter() {
            if prev == Some(b) {
                *run_lengths.last_mut().unwrap() += 1;
            } else {
                run_lengths.push(1);
                prev = Some(b);
            }
        }
        RunProfile {
            run_count: run_lengths.len(),
            run_lengths,
        }
    }
}

/// Number of runs `R(w)` without building the full profile.
pub fn run_count(w: &Word) -> usize {
    if w.is_empty() {
        return 0;
    }
    // adjacent bit changes, plus one
    let changes = (w.bits ^ (w.bits >> 1)) & mask(w.len() - 1);
    changes.count_ones() as usize + 1
}
