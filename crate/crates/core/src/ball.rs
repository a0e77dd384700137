//! Deletion balls: enumeration, counting, and intersections.
//!
//! Everything here is driven by the last-bit rule. If `i` is the largest
//! index with `x_i = a`, the members of `D_t(x)` that end in `a` are exactly
//! `D_{t-(n-i)}(x^(i-1))` with `a` appended. Splitting every ball on the last
//! bit of its members therefore yields each distinct subsequence exactly
//! once, which gives both an output-sensitive enumerator and a polynomial
//! counting DP.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::word::{mask, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BallError {
    #[error("radius {t} out of range for a word of length {len}")]
    RadiusOutOfRange { t: usize, len: usize },
    #[error(
        "balls do not share a member length: |x| - t = {x_len} - {t}, |y| - s = {y_len} - {s}"
    )]
    LengthMismatch {
        x_len: usize,
        t: usize,
        y_len: usize,
        s: usize,
    },
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// Maximum ball size `D(n, t) = sum_{i=0}^{t} C(n - t, i)`.
///
/// Total over all integers: `D(n, n) = 1` and `D(n, t) = 0` for `t < 0`,
/// `t > n` or `n < 0`.
pub fn ball_size_max(n: i64, t: i64) -> u64 {
    if n < 0 || t < 0 || t > n {
        return 0;
    }
    let m = (n - t) as u64;
    (0..=t as u64).map(|i| binomial(m, i)).sum()
}

/// Greedy subsequence test: is `u` obtainable from `w` by deletions?
pub fn is_subsequence(u: &Word, w: &Word) -> bool {
    let (m, n) = (u.len(), w.len());
    if m > n {
        return false;
    }
    if m == 0 {
        return true;
    }
    let (ub, wb) = (u.bits(), w.bits());
    let mut j = m; // bits of u still to match, from the top
    for i in (0..n).rev() {
        if i + 1 < j {
            return false;
        }
        if (wb >> i) & 1 == (ub >> (j - 1)) & 1 {
            j -= 1;
            if j == 0 {
                return true;
            }
        }
    }
    false
}

/// Largest 1-based index `i <= upto` with `x_i = bit`.
#[inline]
pub(crate) fn last_index_of(w: &Word, upto: usize, bit: u8) -> Option<usize> {
    if upto == 0 {
        return None;
    }
    let prefix = w.bits() >> (w.len() - upto);
    let hits = if bit == 1 { prefix } else { !prefix } & mask(upto);
    (hits != 0).then(|| upto - hits.trailing_zeros() as usize)
}

fn check_radius(w: &Word, t: usize) -> Result<(), BallError> {
    if t > w.len() {
        Err(BallError::RadiusOutOfRange { t, len: w.len() })
    } else {
        Ok(())
    }
}

/// Pushes every distinct subsequence of `w^(m)` with exactly `d` deletions,
/// followed by `suffix`, as a packed value.
fn enumerate_into(w: &Word, m: usize, d: usize, suffix: u64, suffix_len: usize, out: &mut Vec<u64>) {
    if d >= m {
        if d == m {
            out.push(suffix);
        }
        return;
    }
    let a = w.bit(m);
    enumerate_into(w, m - 1, d, ((a as u64) << suffix_len) | suffix, suffix_len + 1, out);
    let other = a ^ 1;
    if let Some(i) = last_index_of(w, m - 1, other) {
        if d >= m - i {
            enumerate_into(
                w,
                i - 1,
                d - (m - i),
                ((other as u64) << suffix_len) | suffix,
                suffix_len + 1,
                out,
            );
        }
    }
}

/// Sorted packed members of `D_t(w)`; all have length `|w| - t`.
pub fn ball_packed(w: &Word, t: usize) -> Result<Vec<u64>, BallError> {
    check_radius(w, t)?;
    let mut out = Vec::with_capacity(ball_size_max(w.len() as i64, t as i64) as usize);
    enumerate_into(w, w.len(), t, 0, 0, &mut out);
    out.sort_unstable();
    Ok(out)
}

/// Members of `D_t(w)` in increasing integer order.
pub fn ball_members(w: &Word, t: usize) -> Result<Vec<Word>, BallError> {
    let len = w.len() - t.min(w.len());
    Ok(ball_packed(w, t)?
        .into_iter()
        .map(|b| Word::from_bits_unchecked(b, len))
        .collect())
}

/// A radius-`t` deletion ball with its members materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub center: Word,
    pub radius: usize,
    pub members: HashSet<Word>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: &Word) -> bool {
        self.members.contains(u)
    }

    /// Members in increasing order, for stable output.
    pub fn sorted_members(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.members.iter().copied().collect();
        v.sort_unstable();
        v
    }
}

pub fn deletion_ball(w: &Word, t: usize) -> Result<Ball, BallError> {
    Ok(Ball {
        center: *w,
        radius: t,
        members: ball_members(w, t)?.into_iter().collect(),
    })
}

/// `|D_t(w)|` by dynamic programming over prefixes, `O(|w| t)` time.
pub fn count_ball(w: &Word, t: usize) -> Result<u64, BallError> {
    check_radius(w, t)?;
    let n = w.len();
    // counts[m][d]: distinct subsequences of w^(m) with exactly d deletions
    let mut counts = vec![vec![0u64; t + 1]; n + 1];
    counts[0][0] = 1;
    for m in 1..=n {
        let a = w.bit(m);
        let prev = last_index_of(w, m - 1, a ^ 1);
        for d in 0..=t.min(m) {
            counts[m][d] = if d == m {
                1
            } else {
                let same = counts[m - 1][d];
                let other = match prev {
                    Some(i) if d >= m - i => counts[i - 1][d - (m - i)],
                    _ => 0,
                };
                same + other
            };
        }
    }
    Ok(counts[n][t])
}

/// Members of `D_t(w)` ending in `a`, via the prefix rule.
pub fn ball_restrict_last(w: &Word, t: usize, a: u8) -> Result<HashSet<Word>, BallError> {
    check_radius(w, t)?;
    let n = w.len();
    let Some(i) = last_index_of(w, n, a) else {
        return Ok(HashSet::new());
    };
    // need to delete the n - i trailing bits after x_i
    if t < n - i || t - (n - i) > i - 1 {
        return Ok(HashSet::new());
    }
    let head = w.prefix_unchecked(i - 1);
    Ok(ball_members(&head, t - (n - i))?
        .into_iter()
        .map(|u| u.push(a).expect("member shorter than center"))
        .collect())
}

/// `|D_t(x) ∩ D_s(y)|` together with its inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntersectionRecord {
    pub x: Word,
    pub y: Word,
    pub t: usize,
    pub s: usize,
    pub size: u64,
}

/// Exact intersection size. Enumerates the ball with the smaller count and
/// probes each member against the other center with [`is_subsequence`], so
/// memory stays proportional to the smaller ball.
pub fn intersection_size(
    x: &Word,
    y: &Word,
    t: usize,
    s: usize,
) -> Result<IntersectionRecord, BallError> {
    check_radius(x, t)?;
    check_radius(y, s)?;
    if x.len() - t != y.len() - s {
        return Err(BallError::LengthMismatch {
            x_len: x.len(),
            t,
            y_len: y.len(),
            s,
        });
    }
    let (small, small_r, other) = if count_ball(x, t)? <= count_ball(y, s)? {
        (x, t, y)
    } else {
        (y, s, x)
    };
    let size = ball_members(small, small_r)?
        .iter()
        .filter(|u| is_subsequence(u, other))
        .count() as u64;
    Ok(IntersectionRecord {
        x: *x,
        y: *y,
        t,
        s,
        size,
    })
}

/// Like [`intersection_size`] but total: any negative or oversized radius
/// denotes an empty ball and contributes zero.
pub fn intersection_size_or_zero(x: &Word, y: &Word, t: i64, s: i64) -> u64 {
    if t < 0 || s < 0 || t as usize > x.len() || s as usize > y.len() {
        return 0;
    }
    intersection_size(x, y, t as usize, s as usize)
        .map(|r| r.size)
        .unwrap_or(0)
}

/// Number of common values in two sorted, deduplicated slices.
#[inline]
pub fn sorted_intersection_count(a: &[u64], b: &[u64]) -> u64 {
    let (mut i, mut j, mut n) = (0, 0, 0u64);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Sorted packed balls of one radius for every word of one length, stored
/// contiguously. Word `v` (as an integer) owns `data[offsets[v]..offsets[v+1]]`.
#[derive(Debug, Clone)]
pub struct BallTable {
    pub len: usize,
    pub radius: usize,
    offsets: Vec<u32>,
    data: Vec<u64>,
}

impl BallTable {
    /// # Panics
    /// If `radius > len` or `len > 24`.
    pub fn build(len: usize, radius: usize) -> Self {
        assert!(radius <= len && len <= 24, "ball table ({len}, {radius}) out of range");
        let words = 1usize << len;
        let mut offsets = Vec::with_capacity(words + 1);
        let mut data = Vec::new();
        offsets.push(0);
        for v in 0..words as u64 {
            let w = Word::from_bits_unchecked(v, len);
            let start = data.len();
            enumerate_into(&w, len, radius, 0, 0, &mut data);
            data[start..].sort_unstable();
            offsets.push(u32::try_from(data.len()).expect("ball table too large"));
        }
        BallTable {
            len,
            radius,
            offsets,
            data,
        }
    }

    #[inline]
    pub fn ball(&self, v: u64) -> &[u64] {
        let v = v as usize;
        &self.data[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn set(items: &[&str]) -> HashSet<Word> {
        items.iter().map(|s| w(s)).collect()
    }

    /// Independent oracle: delete every t-subset of positions.
    fn brute_ball(x: &Word, t: usize) -> HashSet<Word> {
        let n = x.len();
        let mut out = HashSet::new();
        for mask in 0u64..(1u64 << n) {
            if mask.count_ones() as usize != t {
                continue;
            }
            let kept: Vec<bool> = (1..=n)
                .filter(|&i| (mask >> (i - 1)) & 1 == 0)
                .map(|i| x.bit(i) == 1)
                .collect();
            out.insert(Word::from_bools(&kept).unwrap());
        }
        out
    }

    #[test]
    fn ball_examples() {
        assert_eq!(deletion_ball(&w("10"), 1).unwrap().members, set(&["1", "0"]));
        assert_eq!(deletion_ball(&w("0000"), 2).unwrap().members, set(&["00"]));
        assert_eq!(deletion_ball(&w("101010"), 2).unwrap().len(), 11);
        assert_eq!(deletion_ball(&w("101"), 3).unwrap().members, set(&[""]));
        assert_eq!(
            deletion_ball(&w("10"), 3),
            Err(BallError::RadiusOutOfRange { t: 3, len: 2 })
        );
    }

    #[test]
    fn ball_size_max_examples() {
        for n in 0..10 {
            assert_eq!(ball_size_max(n, 0), 1);
        }
        assert_eq!(ball_size_max(6, 2), 11);
        assert_eq!(ball_size_max(4, 4), 1);
        assert_eq!(ball_size_max(4, 5), 0);
        assert_eq!(ball_size_max(4, -1), 0);
        assert_eq!(ball_size_max(-1, 0), 0);
        assert_eq!(ball_size_max(8, 2), 1 + 6 + 15);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_ball(&w("0000"), 2).unwrap(), 1);
        assert_eq!(count_ball(&w("101010"), 2).unwrap(), 11);
        assert_eq!(count_ball(&w("1101"), 0).unwrap(), 1);
        assert_eq!(count_ball(&Word::EMPTY, 0).unwrap(), 1);
        assert!(count_ball(&w("1"), 2).is_err());
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(intersection_size(&w("10"), &w("01"), 1, 1).unwrap().size, 2);
        let x = w("0110101");
        assert_eq!(
            intersection_size(&x, &x, 3, 3).unwrap().size,
            count_ball(&x, 3).unwrap()
        );
        assert_eq!(
            intersection_size(&w("101010"), &w("011001"), 2, 2).unwrap().size,
            6
        );
        assert!(matches!(
            intersection_size(&w("101"), &w("1010"), 1, 1),
            Err(BallError::LengthMismatch { .. })
        ));
        assert_eq!(intersection_size_or_zero(&w("10"), &w("01"), -1, 0), 0);
        assert_eq!(intersection_size_or_zero(&w("10"), &w("01"), 3, 3), 0);
    }

    #[test]
    fn subsequence_examples() {
        assert!(is_subsequence(&w("11"), &w("1010")));
        assert!(!is_subsequence(&w("000"), &w("0101")));
        assert!(is_subsequence(&w("1011011001"), &w("01100110011001")));
        assert!(is_subsequence(&Word::EMPTY, &Word::EMPTY));
        assert!(!is_subsequence(&w("0"), &Word::EMPTY));
        assert!(is_subsequence(&w("0101"), &w("0101")));
        assert!(!is_subsequence(&w("0110"), &w("0101")));
    }

    #[test]
    fn subsequence_matches_brute_force() {
        for n in 0..=8usize {
            for xb in 0..(1u64 << n) {
                let x = Word::from_bits_unchecked(xb, n);
                for t in 0..=n {
                    let ball = brute_ball(&x, t);
                    for ub in 0..(1u64 << (n - t)) {
                        let u = Word::from_bits_unchecked(ub, n - t);
                        assert_eq!(is_subsequence(&u, &x), ball.contains(&u), "{u} in {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn restrict_last_examples() {
        assert_eq!(ball_restrict_last(&w("10"), 1, 0).unwrap(), set(&["0"]));
        assert!(ball_restrict_last(&w("0000"), 1, 1).unwrap().is_empty());
        assert_eq!(ball_restrict_last(&w("1010"), 1, 1).unwrap(), set(&["101"]));
        assert!(ball_restrict_last(&w("1010"), 4, 1).unwrap().is_empty());
    }

    #[test]
    fn enumeration_matches_oracle_exhaustively() {
        for n in 0..=12usize {
            for xb in 0..(1u64 << n) {
                let x = Word::from_bits_unchecked(xb, n);
                for t in 0..=n {
                    let packed = ball_packed(&x, t).unwrap();
                    let oracle = brute_ball(&x, t);
                    assert_eq!(packed.len(), oracle.len(), "{x} t={t}");
                    let count = count_ball(&x, t).unwrap();
                    assert_eq!(count as usize, oracle.len(), "{x} t={t}");
                    assert!(count <= ball_size_max(n as i64, t as i64));
                    if n <= 9 {
                        let got: HashSet<Word> = ball_members(&x, t).unwrap().into_iter().collect();
                        assert_eq!(got, oracle);
                    }
                }
            }
        }
    }

    #[test]
    fn alternating_attains_maximum() {
        for n in 0..=20usize {
            let alt = crate::construct::alternating(n, 1).unwrap();
            for t in 0..=n {
                assert_eq!(
                    count_ball(&alt, t).unwrap(),
                    ball_size_max(n as i64, t as i64)
                );
            }
        }
    }

    #[test]
    fn last_bit_partition() {
        for n in 1..=10usize {
            for xb in 0..(1u64 << n) {
                let x = Word::from_bits_unchecked(xb, n);
                for t in 0..n {
                    let ball = deletion_ball(&x, t).unwrap();
                    let zeros = ball_restrict_last(&x, t, 0).unwrap();
                    let ones = ball_restrict_last(&x, t, 1).unwrap();
                    assert!(zeros.is_disjoint(&ones));
                    let union: HashSet<Word> = zeros.union(&ones).copied().collect();
                    assert_eq!(union, ball.members, "{x} t={t}");
                    for m in &ball.members {
                        assert!(is_subsequence(m, &x));
                    }
                }
            }
        }
    }

    #[test]
    fn ball_table_matches_direct() {
        let table = BallTable::build(7, 3);
        for v in 0..128u64 {
            let x = Word::from_bits_unchecked(v, 7);
            assert_eq!(table.ball(v), ball_packed(&x, 3).unwrap().as_slice());
        }
    }

    #[test]
    fn sorted_intersection() {
        assert_eq!(sorted_intersection_count(&[1, 3, 5, 7], &[0, 3, 4, 7, 9]), 2);
        assert_eq!(sorted_intersection_count(&[], &[1]), 0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(10_000))]
            #[test]
            fn count_agrees_with_enumeration(n in 0usize..=20, bits in any::<u64>(), t in 0usize..=5) {
                let x = Word::from_bits_unchecked(bits, n);
                let t = t.min(n);
                let members = ball_packed(&x, t).unwrap();
                prop_assert_eq!(count_ball(&x, t).unwrap(), members.len() as u64);
                prop_assert!(members.windows(2).all(|p| p[0] < p[1]));
            }
        }
    }
}
