//! Varshamov-Tenengolts codes `VT_a(n) = { x : sum_i i x_i = a (mod n+1) }`.
//!
//! Decoding one deletion uses the weight/checksum argument: with `w` ones in
//! the received word and checksum deficiency `D`, a deleted 0 had exactly `D`
//! ones to its right when `D <= w`, and otherwise a deleted 1 had `D - w - 1`
//! zeros to its left.

use super::{CodeError, CodeKind, Codebook, DecodeOutcome, Decoder};
use crate::word::{Word, CAPACITY};

/// Longest length for which [`vt_codebook`] enumerates all of `{0,1}^n`.
pub const MAX_VT_ENUM_LEN: usize = 24;

/// `sum_{i=1}^{n} i x_i mod (n + 1)`.
pub fn vt_syndrome(w: &Word) -> u64 {
    let n = w.len() as u64;
    let mut sum = 0u64;
    let mut rest = w.bits();
    while rest != 0 {
        let low = rest.trailing_zeros() as u64; // 0 is position n
        sum += n - low;
        rest &= rest - 1;
    }
    sum % (n + 1)
}

fn check_residue(n: usize, a: u64) -> Result<(), CodeError> {
    if a > n as u64 {
        Err(CodeError::ResidueOutOfRange { n, a })
    } else {
        Ok(())
    }
}

/// All words of length `n` with syndrome `a`.
pub fn vt_codebook(n: usize, a: u64) -> Result<Codebook, CodeError> {
    check_residue(n, a)?;
    if n > MAX_VT_ENUM_LEN {
        return Err(CodeError::BudgetExceeded(format!(
            "VT enumeration limited to n <= {MAX_VT_ENUM_LEN}, got {n}"
        )));
    }
    let words = (0..1u64 << n)
        .map(|v| Word::from_bits_unchecked(v, n))
        .filter(|w| vt_syndrome(w) == a)
        .collect();
    Codebook::new(n, 1, CodeKind::Vt { residue: a }, words)
}

fn parity_bits(n: usize) -> usize {
    (usize::BITS - n.leading_zeros()) as usize
}

/// Number of free message bits of the systematic encoder.
pub fn vt_message_bits(n: usize) -> usize {
    n - parity_bits(n)
}

/// Systematic encoder: the message `index` fills the non-power-of-two
/// positions (most significant bit first) and the positions `1, 2, 4, ...`
/// carry the binary expansion of the checksum deficiency.
pub fn vt_encode(n: usize, a: u64, index: u64) -> Result<Word, CodeError> {
    if n == 0 || n > CAPACITY {
        return Err(CodeError::Invalid(format!("VT length must be in 1..={CAPACITY}, got {n}")));
    }
    check_residue(n, a)?;
    let k = vt_message_bits(n);
    if k < 64 && index >> k != 0 {
        return Err(CodeError::IndexOutOfRange { index, bits: k });
    }
    let mut bits = vec![false; n + 1]; // 1-based
    let mut next = k;
    for (i, slot) in bits.iter_mut().enumerate().skip(1) {
        if !i.is_power_of_two() {
            next -= 1;
            *slot = (index >> next) & 1 == 1;
        }
    }
    let modulus = n as u64 + 1;
    let partial: u64 = (1..=n).filter(|&i| bits[i]).map(|i| i as u64).sum::<u64>() % modulus;
    let deficiency = (a + modulus - partial) % modulus;
    for j in 0..parity_bits(n) {
        if (deficiency >> j) & 1 == 1 {
            bits[1 << j] = true;
        }
    }
    Ok(Word::from_bools(&bits[1..])?)
}

/// Recovers the codeword of `VT_a(n)` from `y` with one bit deleted.
///
/// Every word of length `n - 1` lies in the single-deletion ball of exactly
/// one codeword, so `Failure` is only reachable through the final checksum
/// guard.
pub fn vt_decode(y: &Word, n: usize, a: u64) -> Result<DecodeOutcome, CodeError> {
    check_residue(n, a)?;
    if n == 0 || y.len() + 1 != n {
        return Err(CodeError::LengthMismatch {
            expected: n.saturating_sub(1),
            got: y.len(),
        });
    }
    let m = y.len();
    let weight = y.count_ones() as u64;
    let modulus = n as u64 + 1;
    // checksum of y with positions 1..=n-1
    let mut sum = 0u64;
    for (i, b) in y.iter().enumerate() {
        sum += (i as u64 + 1) * b as u64;
    }
    let deficiency = (a + modulus - sum % modulus) % modulus;

    // p = number of bits of y placed before the inserted one
    let (bit, p) = if deficiency <= weight {
        // rightmost slot with exactly `deficiency` ones after it
        let mut ones_right = 0u64;
        let mut p = m;
        while ones_right < deficiency {
            p -= 1;
            ones_right += y.bit(p + 1) as u64;
        }
        (0u8, p)
    } else {
        // leftmost slot with exactly `deficiency - weight - 1` zeros before it
        let zeros_needed = deficiency - weight - 1;
        let mut zeros_left = 0u64;
        let mut p = 0;
        while zeros_left < zeros_needed {
            zeros_left += 1 - y.bit(p + 1) as u64;
            p += 1;
        }
        (1u8, p)
    };
    let head = y.prefix(p)?;
    let tail = y.suffix_from(p)?;
    let x = head.push(bit)?.concat(&tail)?;
    Ok(if vt_syndrome(&x) == a {
        DecodeOutcome::Codeword(x)
    } else {
        DecodeOutcome::Failure
    })
}

/// Linear-time single-deletion decoder for `VT_a(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VtDecoder {
    pub n: usize,
    pub a: u64,
}

impl Decoder for VtDecoder {
    fn code_length(&self) -> usize {
        self.n
    }

    fn radius(&self) -> usize {
        1
    }

    fn decode(&self, y: &Word) -> Result<DecodeOutcome, CodeError> {
        vt_decode(y, self.n, self.a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::{ball_members, is_subsequence};

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn syndrome_examples() {
        assert_eq!(vt_syndrome(&w("0000")), 0);
        assert_eq!(vt_syndrome(&w("1000")), 1);
        assert_eq!(vt_syndrome(&w("1010")), 4);
        assert_eq!(vt_syndrome(&w("1111")), 10 % 5);
        assert_eq!(vt_syndrome(&Word::EMPTY), 0);
    }

    #[test]
    fn codebook_examples() {
        let cb = vt_codebook(4, 0).unwrap();
        assert!(cb.contains(&w("0000")));
        assert!(cb.distance_violations().is_empty());
        let cb8 = vt_codebook(8, 0).unwrap();
        let oracle = (0..256u64)
            .filter(|&v| {
                let s: u64 = (1..=8).filter(|i| (v >> (8 - i)) & 1 == 1).sum();
                s.is_multiple_of(9)
            })
            .count();
        assert_eq!(cb8.len(), oracle);
        assert!(vt_codebook(4, 5).is_err());
        assert!(vt_codebook(25, 0).is_err());
    }

    #[test]
    fn decode_examples() {
        let x = w("0000");
        for y in ball_members(&x, 1).unwrap() {
            assert_eq!(vt_decode(&y, 4, 0).unwrap(), DecodeOutcome::Codeword(x));
        }
        assert!(matches!(
            vt_decode(&w("01"), 4, 0),
            Err(CodeError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn decode_roundtrip_exhaustive() {
        for n in 1..=10usize {
            for a in 0..=n as u64 {
                let cb = vt_codebook(n, a).unwrap();
                for x in cb.codewords() {
                    for y in ball_members(x, 1).unwrap() {
                        assert_eq!(vt_decode(&y, n, a).unwrap(), DecodeOutcome::Codeword(*x));
                    }
                }
            }
        }
    }

    #[test]
    fn every_short_word_decodes() {
        // VT codes are perfect: no word of length n-1 falls outside every ball
        for n in 1..=10usize {
            for a in 0..=n as u64 {
                let cb = vt_codebook(n, a).unwrap();
                for v in 0..1u64 << (n - 1) {
                    let y = Word::from_bits(v, n - 1).unwrap();
                    let owners = cb.codewords().iter().filter(|c| is_subsequence(&y, c)).count();
                    assert_eq!(owners, 1);
                    let x = vt_decode(&y, n, a).unwrap().codeword().unwrap();
                    assert!(is_subsequence(&y, &x));
                }
            }
        }
    }

    #[test]
    fn systematic_encoder() {
        for n in 1..=12usize {
            let cb = vt_codebook(n, 0).unwrap();
            let k = vt_message_bits(n);
            let mut seen = std::collections::HashSet::new();
            for index in 0..1u64 << k {
                let x = vt_encode(n, 0, index).unwrap();
                assert!(cb.contains(&x));
                assert!(seen.insert(x));
            }
            assert!(vt_encode(n, 0, 1 << k).is_err());
        }
        let x = vt_encode(64, 0, (1 << 57) - 1).unwrap();
        assert_eq!(x.len(), 64);
        assert_eq!(vt_syndrome(&x), 0);
        assert_eq!(vt_message_bits(16), 11);
        assert_eq!(vt_message_bits(64), 57);
    }

    #[test]
    fn decode_long_words() {
        let x = vt_encode(64, 3, 0x0012_3456_789A_BCDE).unwrap();
        for i in [1, 17, 40, 64] {
            let y = x.delete(i).unwrap();
            assert_eq!(vt_decode(&y, 64, 3).unwrap(), DecodeOutcome::Codeword(x));
        }
    }
}
