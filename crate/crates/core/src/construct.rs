//! Explicit word families: alternating words and the extremal pairs that
//! attain the lower bound on ball intersections.

use thiserror::Error;

use crate::word::{Word, WordError, CAPACITY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("ell must be at least 1")]
    ZeroEll,
    #[error("length {needed} exceeds the {CAPACITY}-bit word capacity")]
    OverCapacity { needed: usize },
    #[error("n = {n} is below the minimum length 4*ell-2 = {min}")]
    TooShort { n: usize, min: usize },
}

impl From<WordError> for ConstructError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::OverCapacity(needed) => ConstructError::OverCapacity { needed },
            other => unreachable!("construction produced {other}"),
        }
    }
}

/// Alternating word of length `m` starting with `first`.
pub fn alternating(m: usize, first: u8) -> Result<Word, ConstructError> {
    if m > CAPACITY {
        return Err(ConstructError::OverCapacity { needed: m });
    }
    // 0b...1010 pattern ending in the correct bit for position m
    let pattern = 0xAAAA_AAAA_AAAA_AAAAu64;
    let last = (first & 1) ^ ((m.wrapping_sub(1) % 2) as u8);
    let bits = if m == 0 {
        0
    } else if last == 0 {
        pattern
    } else {
        !pattern
    };
    Ok(Word::from_bits_unchecked(bits, m))
}

fn repeat(unit: &str, times: usize, tail: &str) -> Result<Word, ConstructError> {
    let needed = unit.len() * times + tail.len();
    if needed > CAPACITY {
        return Err(ConstructError::OverCapacity { needed });
    }
    let mut s = unit.repeat(times);
    s.push_str(tail);
    Ok(Word::parse(&s)?)
}

/// The pair `A = (1010)^(ell-1) 10`, `B = (0110)^(ell-1) 01`, both of
/// length `4 ell - 2`.
pub fn construct_ab(ell: usize) -> Result<(Word, Word), ConstructError> {
    if ell == 0 {
        return Err(ConstructError::ZeroEll);
    }
    let a = repeat("1010", ell - 1, "10")?;
    let b = repeat("0110", ell - 1, "01")?;
    Ok((a, b))
}

/// `X = A Z` and `Y = B Z` where `Z` is the alternating word of length
/// `n - 4 ell + 2` starting with one.
pub fn construct_extremal_pair(n: usize, ell: usize) -> Result<(Word, Word), ConstructError> {
    if ell == 0 {
        return Err(ConstructError::ZeroEll);
    }
    let min = 4 * ell - 2;
    if n < min {
        return Err(ConstructError::TooShort { n, min });
    }
    if n > CAPACITY {
        return Err(ConstructError::OverCapacity { needed: n });
    }
    let (a, b) = construct_ab(ell)?;
    let z = alternating(n - min, 1)?;
    Ok((a.concat(&z)?, b.concat(&z)?))
}

/// Positions `i` in `1..=4 ell - 2` with `i = 1, 2 (mod 4)`: the 01-blocks
/// of `B`, which are exactly the positions where `A` and `B` differ.
pub fn block_positions(ell: usize) -> Vec<usize> {
    if ell == 0 {
        return Vec::new();
    }
    (1..=4 * ell - 2).filter(|i| matches!(i % 4, 1 | 2)).collect()
}

/// Every word obtained from `B` by deleting `ell` positions drawn from its
/// 01-blocks, one entry per `ell`-subset of [`block_positions`], in
/// lexicographic subset order. The words are pairwise distinct and all lie
/// in the radius-`ell` deletion ball of `A`.
pub fn block_deletion_family(ell: usize) -> Result<Vec<(Vec<usize>, Word)>, ConstructError> {
    let (_, b) = construct_ab(ell)?;
    let positions = block_positions(ell);
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(ell);
    subsets(&positions, ell, 0, &mut chosen, &mut |subset| {
        out.push((subset.to_vec(), b.delete_positions(subset)));
    });
    Ok(out)
}

fn subsets(
    items: &[usize],
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if chosen.len() == k {
        visit(chosen);
        return;
    }
    let remaining = k - chosen.len();
    for i in start..=items.len().saturating_sub(remaining) {
        if i >= items.len() {
            break;
        }
        chosen.push(items[i]);
        subsets(items, k, i + 1, chosen, visit);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::run_count;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(alternating(4, 1).unwrap(), w("1010"));
        assert_eq!(alternating(0, 1).unwrap(), Word::EMPTY);
        assert_eq!(alternating(3, 0).unwrap(), w("010"));
        assert_eq!(alternating(1, 0).unwrap(), w("0"));
        assert_eq!(alternating(64, 1).unwrap().to_string(), "10".repeat(32));
        assert!(alternating(65, 0).is_err());
    }

    #[test]
    fn ab_examples() {
        assert_eq!(construct_ab(1).unwrap(), (w("10"), w("01")));
        assert_eq!(construct_ab(2).unwrap(), (w("101010"), w("011001")));
        assert_eq!(
            construct_ab(4).unwrap(),
            (w("10101010101010"), w("01100110011001"))
        );
        assert_eq!(construct_ab(0), Err(ConstructError::ZeroEll));
        assert!(construct_ab(16).unwrap().0.len() == 62);
        assert!(matches!(
            construct_ab(17),
            Err(ConstructError::OverCapacity { .. })
        ));
    }

    #[test]
    fn ab_lengths_and_runs() {
        for ell in 1..=15 {
            let (a, b) = construct_ab(ell).unwrap();
            assert_eq!(a.len(), 4 * ell - 2);
            assert_eq!(b.len(), 4 * ell - 2);
            assert_eq!(run_count(&a), 4 * ell - 2);
            assert_eq!(run_count(&b), 2 * ell);
        }
    }

    #[test]
    fn extremal_pair_examples() {
        assert_eq!(
            construct_extremal_pair(6, 2).unwrap(),
            (w("101010"), w("011001"))
        );
        assert_eq!(
            construct_extremal_pair(8, 2).unwrap(),
            (w("10101010"), w("01100110"))
        );
        assert_eq!(construct_extremal_pair(2, 1).unwrap(), (w("10"), w("01")));
        assert_eq!(
            construct_extremal_pair(5, 2),
            Err(ConstructError::TooShort { n: 5, min: 6 })
        );
    }

    #[test]
    fn block_positions_match_differences() {
        assert_eq!(block_positions(4), vec![1, 2, 5, 6, 9, 10, 13, 14]);
        for ell in 1..=8 {
            let (a, b) = construct_ab(ell).unwrap();
            let differ: Vec<usize> = (1..=a.len()).filter(|&i| a.bit(i) != b.bit(i)).collect();
            assert_eq!(differ, block_positions(ell));
        }
    }

    #[test]
    fn block_family_worked_example() {
        let family = block_deletion_family(4).unwrap();
        assert_eq!(family.len(), 70);
        let find = |j: &[usize]| family.iter().find(|(s, _)| s == j).unwrap().1;
        // deleting position 9 keeps the 1 at position 10, and vice versa
        assert_eq!(find(&[1, 2, 5, 9]), w("1011011001"));
        assert_eq!(find(&[1, 2, 5, 10]), w("1011001001"));
    }
}
