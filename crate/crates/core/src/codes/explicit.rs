//! Explicit codebooks found by greedy search, decoded by exhaustive scan.

use super::{CodeError, CodeKind, Codebook, DecodeOutcome, Decoder};
use crate::ball::is_subsequence;
use crate::search::LcsPattern;
use crate::word::Word;

pub const MAX_GREEDY_LEN: usize = 16;

/// Scans `{0,1}^n` in increasing order, admitting each word whose deletion
/// distance to every admitted word is at least `ell`.
pub fn greedy_codebook(n: usize, ell: usize) -> Result<Codebook, CodeError> {
    if n > MAX_GREEDY_LEN {
        return Err(CodeError::BudgetExceeded(format!(
            "greedy codebook limited to n <= {MAX_GREEDY_LEN}, got {n}"
        )));
    }
    if ell == 0 {
        return Err(CodeError::Invalid("minimum distance must be at least 1".into()));
    }
    let mut admitted: Vec<u64> = Vec::new();
    for v in 0..1u64 << n {
        let pattern = LcsPattern::new(&Word::from_bits_unchecked(v, n));
        if admitted.iter().all(|&c| n - pattern.lcs(c, n) >= ell) {
            admitted.push(v);
        }
    }
    let words = admitted
        .into_iter()
        .map(|v| Word::from_bits_unchecked(v, n))
        .collect();
    Codebook::new(n, ell - 1, CodeKind::Explicit, words)
}

/// The codeword containing `y` as a subsequence, found by scanning the whole
/// codebook. `y` must have length `n - r` with `r` within the correction
/// capability.
pub fn brute_decode(cb: &Codebook, y: &Word, r: usize) -> Result<DecodeOutcome, CodeError> {
    if r > cb.correctable {
        return Err(CodeError::RadiusTooLarge {
            r,
            capability: cb.correctable,
        });
    }
    if y.len() + r != cb.n {
        return Err(CodeError::LengthMismatch {
            expected: cb.n.saturating_sub(r),
            got: y.len(),
        });
    }
    let mut hits = cb.codewords().iter().filter(|c| is_subsequence(y, c));
    match (hits.next(), hits.count()) {
        (None, _) => Ok(DecodeOutcome::Failure),
        (Some(x), 0) => Ok(DecodeOutcome::Codeword(*x)),
        (Some(_), more) => Err(CodeError::MultipleMatches {
            y: *y,
            count: more + 1,
            capability: cb.correctable,
        }),
    }
}

/// [`brute_decode`] at the full correction radius, `O(|C| n)` per call.
#[derive(Debug, Clone)]
pub struct BruteDecoder {
    pub codebook: Codebook,
}

impl Decoder for BruteDecoder {
    fn code_length(&self) -> usize {
        self.codebook.n
    }

    fn radius(&self) -> usize {
        self.codebook.correctable
    }

    fn decode(&self, y: &Word) -> Result<DecodeOutcome, CodeError> {
        brute_decode(&self.codebook, y, self.codebook.correctable)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::ball_members;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn distance_one_admits_everything() {
        for n in 0..=6 {
            assert_eq!(greedy_codebook(n, 1).unwrap().len(), 1 << n);
        }
    }

    #[test]
    fn greedy_distances_hold() {
        for n in 1..=12 {
            for ell in 2..=4 {
                let cb = greedy_codebook(n, ell).unwrap();
                assert!(!cb.is_empty());
                assert!(cb.distance_violations().is_empty(), "n={n} ell={ell}");
            }
        }
        let cb = greedy_codebook(10, 3).unwrap();
        assert!(cb.len() > 1);
        assert!(greedy_codebook(17, 2).is_err());
        assert!(greedy_codebook(4, 0).is_err());
    }

    #[test]
    fn greedy_is_maximal() {
        let cb = greedy_codebook(8, 3).unwrap();
        for v in 0..256u64 {
            let x = Word::from_bits_unchecked(v, 8);
            if !cb.contains(&x) {
                assert!(cb
                    .codewords()
                    .iter()
                    .any(|c| crate::distance::distance_value(c, &x) < 3));
            }
        }
    }

    #[test]
    fn brute_decode_contract() {
        let cb = greedy_codebook(9, 3).unwrap();
        for x in cb.codewords() {
            assert_eq!(brute_decode(&cb, x, 0).unwrap(), DecodeOutcome::Codeword(*x));
            for r in 0..=2 {
                for y in ball_members(x, r).unwrap() {
                    assert_eq!(brute_decode(&cb, &y, r).unwrap(), DecodeOutcome::Codeword(*x));
                }
            }
        }
        // a length-7 word outside every radius-2 ball
        let outside = (0..128u64)
            .map(|v| Word::from_bits_unchecked(v, 7))
            .find(|y| cb.codewords().iter().all(|c| !is_subsequence(y, c)));
        if let Some(y) = outside {
            assert_eq!(brute_decode(&cb, &y, 2).unwrap(), DecodeOutcome::Failure);
        }
        assert!(matches!(
            brute_decode(&cb, &w("0000000"), 3),
            Err(CodeError::RadiusTooLarge { .. })
        ));
        assert!(matches!(
            brute_decode(&cb, &w("000"), 2),
            Err(CodeError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn failure_is_reachable() {
        // a one-word code: anything that is not a subsequence fails
        let cb = Codebook::new(4, 1, CodeKind::Explicit, vec![w("0000")]).unwrap();
        assert_eq!(brute_decode(&cb, &w("001"), 1).unwrap(), DecodeOutcome::Failure);
    }

    #[test]
    fn corrupted_codebook_reports_multiple_matches() {
        let cb = Codebook::new(3, 1, CodeKind::Explicit, vec![w("010"), w("011")]).unwrap();
        assert!(matches!(
            brute_decode(&cb, &w("01"), 1),
            Err(CodeError::MultipleMatches { count: 2, .. })
        ));
    }
}
