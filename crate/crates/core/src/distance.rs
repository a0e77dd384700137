//! Deletion (Levenshtein) distance between binary words.
//!
//! For `|x| <= |y|` the distance is the least `t` such that the radius-`t`
//! ball of `x` meets the radius-`t + |y| - |x|` ball of `y`, which equals
//! `|x| - LCS(x, y)`.

use serde::Serialize;
use thiserror::Error;

use crate::word::{mask, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("expected |x| <= |y|, got {x_len} > {y_len}")]
    LengthOrder { x_len: usize, y_len: usize },
    #[error("precondition d_L(x, y) >= {ell} fails: d_L = {distance}")]
    DistanceBelowFloor { ell: usize, distance: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceResult {
    pub value: usize,
    /// A common subsequence of length `min(|x|, |y|) - value`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Word>,
}

/// Length of the longest common subsequence, bit-parallel in `x`
/// (one word operation sequence per bit of `y`).
pub fn lcs_length(x: &Word, y: &Word) -> usize {
    let (p, q) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let m = p.len();
    if m == 0 {
        return 0;
    }
    let full = mask(m);
    // bit j-1 of match[c] is set when p_j = c
    let ones = p.reverse().bits();
    let matches = [!ones & full, ones];
    let mut v = full;
    for c in q.iter() {
        let u = v & matches[c as usize];
        v = (v.wrapping_add(u) | v.wrapping_sub(u)) & full;
    }
    m - v.count_ones() as usize
}

/// Full LCS table over suffixes: `table[i][j] = LCS(x[i..], y[j..])`.
fn suffix_lcs_table(x: &Word, y: &Word) -> Vec<Vec<u8>> {
    let (n, m) = (x.len(), y.len());
    let mut table = vec![vec![0u8; m + 1]; n + 1];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            table[i][j] = if x.bit(i + 1) == y.bit(j + 1) {
                table[i + 1][j + 1] + 1
            } else {
                table[i + 1][j].max(table[i][j + 1])
            };
        }
    }
    table
}

/// A longest common subsequence by table traceback. At each step the
/// earliest remaining position of `x` that can start an optimal match wins.
pub fn lcs_witness(x: &Word, y: &Word) -> Word {
    let table = suffix_lcs_table(x, y);
    let (n, m) = (x.len(), y.len());
    let (mut i, mut j) = (0, 0);
    let mut out = Word::EMPTY;
    while i < n && j < m {
        if x.bit(i + 1) == y.bit(j + 1) && table[i][j] == table[i + 1][j + 1] + 1 {
            out = out.push(x.bit(i + 1)).expect("witness within capacity");
            i += 1;
            j += 1;
        } else if table[i][j + 1] == table[i][j] {
            j += 1;
        } else {
            i += 1;
        }
    }
    out
}

/// `d_L(x, y)`; the arguments are swapped internally when `|x| > |y|`.
pub fn deletion_distance(x: &Word, y: &Word) -> DistanceResult {
    DistanceResult {
        value: x.len().min(y.len()) - lcs_length(x, y),
        witness: None,
    }
}

pub fn deletion_distance_with_witness(x: &Word, y: &Word) -> DistanceResult {
    let witness = lcs_witness(x, y);
    DistanceResult {
        value: x.len().min(y.len()) - witness.len(),
        witness: Some(witness),
    }
}

#[inline]
pub(crate) fn distance_value(x: &Word, y: &Word) -> usize {
    x.len().min(y.len()) - lcs_length(x, y)
}

/// Checks the prefix-distance rule that applies to `(x, y)` given
/// `d_L(x, y) >= ell` and `|y| = |x| + k`:
///
/// * last bits equal: `d_L(x^(n-1), y^(n+k-1)) >= ell`;
/// * last bits differ, `k = 0`: both one-sided prefix distances are `>= ell - 1`;
/// * last bits differ, `k > 0`: `d_L(x^(n-1), y) >= ell - 1` and
///   `d_L(x, y^(n+k-1)) >= ell`.
///
/// An empty `x` satisfies the rule vacuously.
pub fn check_distance_recursion(x: &Word, y: &Word, ell: usize) -> Result<bool, DistanceError> {
    let (n, m) = (x.len(), y.len());
    if n > m {
        return Err(DistanceError::LengthOrder { x_len: n, y_len: m });
    }
    let distance = distance_value(x, y);
    if distance < ell {
        return Err(DistanceError::DistanceBelowFloor { ell, distance });
    }
    if n == 0 {
        return Ok(true);
    }
    let k = m - n;
    let xp = x.prefix_unchecked(n - 1);
    let yp = y.prefix_unchecked(m - 1);
    let ell = ell as i64;
    let d = |a: &Word, b: &Word| distance_value(a, b) as i64;
    Ok(if x.last() == y.last() {
        d(&xp, &yp) >= ell
    } else if k == 0 {
        d(&xp, y) >= ell - 1 && d(x, &yp) >= ell - 1
    } else {
        d(&xp, y) >= ell - 1 && d(x, &yp) >= ell
    })
}
