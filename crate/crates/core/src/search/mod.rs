//! Exhaustive computation of `N(n, ell, t)`, the largest intersection of two
//! radius-`t` deletion balls whose centers are at deletion distance at least
//! `ell`, together with the closed-form values and bounds it is checked
//! against.
//!
//! Pairs are scanned over packed words. Each search precomputes the sorted
//! balls of every word of the two lengths involved, so a pair costs one
//! bit-parallel LCS and, when the distance floor is met, one sorted merge.
//!
//! The pair space can be cut by the symmetry group generated by complement
//! and reversal acting on both words at once. Both the deletion distance and
//! the intersection size are invariant under it, so only pairs that are the
//! smallest in their orbit are evaluated. At `k = 0` pairs are also
//! unordered (`x <= y`). The reported argmax is always the smallest
//! maximizing pair in `(x, y)` integer order, whether or not the reduction is
//! on.

mod bounds;
mod conjecture;
mod table;
mod verify;

pub use bounds::{
    formula_entry, formula_n1, formula_n2, lower_bound, upper_bound, upper_bound_floor,
};
pub use conjecture::{ConjectureReport, ConjectureRow};
pub use table::{Method, NEntry, NTable, TableError};
pub use verify::{PairReport, SReport};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::ball::{sorted_intersection_count, BallTable};
use crate::word::{mask, Word};

/// Hard ceiling on the number of pairs a single scan may visit.
pub const DEFAULT_MAX_PAIRS: u64 = 1 << 30;
/// Longest first word an exhaustive scan accepts.
pub const DEFAULT_MAX_N: usize = 14;
const MAX_TABLE_LEN: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("no pair of lengths ({n}, {m}) has deletion distance >= {ell}")]
    Infeasible { n: usize, m: usize, ell: usize },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// One instance of the maximization: `x` of length `n`, `y` of length
/// `n + k`, radii `t` and `t + k`, distance floor `ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NQuery {
    pub n: usize,
    pub ell: usize,
    pub t: usize,
    pub k: usize,
}

impl NQuery {
    pub fn new(n: usize, ell: usize, t: usize) -> Self {
        NQuery { n, ell, t, k: 0 }
    }

    pub fn with_gap(self, k: usize) -> Self {
        NQuery { k, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NResult {
    pub query: NQuery,
    pub value: u64,
    pub argmax: (Word, Word),
    /// Pairs actually evaluated after symmetry reduction.
    pub pairs_evaluated: u64,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub symmetry: bool,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    pub max_n: usize,
    pub max_pairs: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            symmetry: true,
            jobs: None,
            max_n: DEFAULT_MAX_N,
            max_pairs: DEFAULT_MAX_PAIRS,
        }
    }
}

/// Best `(value, x, y)` seen so far. Merging keeps the larger value and, on
/// ties, the smaller pair, so the result does not depend on scan order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Best {
    pub value: u64,
    pub pair: (u64, u64),
    pub evaluated: u64,
    pub feasible: bool,
}

impl Best {
    pub const NONE: Best = Best {
        value: 0,
        pair: (u64::MAX, u64::MAX),
        evaluated: 0,
        feasible: false,
    };

    #[inline]
    pub fn offer(&mut self, value: u64, pair: (u64, u64)) {
        self.evaluated += 1;
        if !self.feasible || value > self.value || (value == self.value && pair < self.pair) {
            self.value = value;
            self.pair = pair;
            self.feasible = true;
        }
    }

    pub fn merge(self, other: Best) -> Best {
        let evaluated = self.evaluated + other.evaluated;
        let pick = match (self.feasible, other.feasible) {
            (false, _) => other,
            (_, false) => self,
            _ if other.value > self.value
                || (other.value == self.value && other.pair < self.pair) =>
            {
                other
            }
            _ => self,
        };
        Best { evaluated, ..pick }
    }
}

/// Bit-parallel LCS with the pattern masks of the shorter word precomputed.
#[derive(Clone, Copy)]
pub(crate) struct LcsPattern {
    len: usize,
    full: u64,
    matches: [u64; 2],
}

impl LcsPattern {
    #[inline]
    pub fn new(w: &Word) -> Self {
        let full = mask(w.len());
        let ones = w.reverse().bits();
        LcsPattern {
            len: w.len(),
            full,
            matches: [!ones & full, ones],
        }
    }

    /// `LCS(pattern, other)` where `other` is given packed with length `m`.
    #[inline]
    pub fn lcs(&self, other: u64, m: usize) -> usize {
        if self.len == 0 {
            return 0;
        }
        let mut v = self.full;
        for i in (0..m).rev() {
            let u = v & self.matches[((other >> i) & 1) as usize];
            v = (v.wrapping_add(u) | v.wrapping_sub(u)) & self.full;
        }
        self.len - v.count_ones() as usize
    }
}

#[inline]
fn reverse_bits(v: u64, len: usize) -> u64 {
    if len == 0 {
        0
    } else {
        v.reverse_bits() >> (64 - len)
    }
}

/// Is `(x, y)` the smallest pair in its orbit under diagonal complement and
/// reversal? With `unordered`, pairs are compared after sorting.
#[inline]
pub(crate) fn is_canonical(x: u64, nx: usize, y: u64, ny: usize, unordered: bool) -> bool {
    let key = |a: u64, b: u64| {
        if unordered && b < a {
            (b, a)
        } else {
            (a, b)
        }
    };
    let me = key(x, y);
    let (cx, cy) = (!x & mask(nx), !y & mask(ny));
    let (rx, ry) = (reverse_bits(x, nx), reverse_bits(y, ny));
    let (crx, cry) = (!rx & mask(nx), !ry & mask(ny));
    me <= key(cx, cy) && me <= key(rx, ry) && me <= key(crx, cry)
}

pub(crate) fn pair_count(n: usize, m: usize, unordered: bool) -> u128 {
    let a = 1u128 << n;
    let b = 1u128 << m;
    if unordered {
        a * (a + 1) / 2
    } else {
        a * b
    }
}

/// Runs exhaustive searches, caching ball tables between queries.
pub struct Searcher {
    pub options: SearchOptions,
    tables: Mutex<HashMap<(usize, usize), Arc<BallTable>>>,
    memo: Mutex<HashMap<NQuery, NResult>>,
    pool: Option<rayon::ThreadPool>,
}

impl Searcher {
    pub fn new(options: SearchOptions) -> Result<Self, SearchError> {
        let pool = match options.jobs {
            Some(j) => Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(j.max(1))
                    .build()
                    .map_err(|e| SearchError::ThreadPool(e.to_string()))?,
            ),
            None => None,
        };
        Ok(Searcher {
            options,
            tables: Mutex::new(HashMap::new()),
            memo: Mutex::new(HashMap::new()),
            pool,
        })
    }

    pub(crate) fn table(&self, len: usize, radius: usize) -> Arc<BallTable> {
        if let Some(t) = self.tables.lock().unwrap().get(&(len, radius)) {
            return t.clone();
        }
        let built = Arc::new(BallTable::build(len, radius));
        self.tables
            .lock()
            .unwrap()
            .entry((len, radius))
            .or_insert(built)
            .clone()
    }

    pub(crate) fn run<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }

    pub(crate) fn check_budget(&self, n: usize, m: usize, unordered: bool) -> Result<(), SearchError> {
        if n > self.options.max_n || m > MAX_TABLE_LEN {
            return Err(SearchError::BudgetExceeded(format!(
                "word lengths ({n}, {m}) exceed the exhaustive limits n <= {}, n + k <= {MAX_TABLE_LEN}",
                self.options.max_n
            )));
        }
        let pairs = pair_count(n, m, unordered);
        if pairs > self.options.max_pairs as u128 {
            return Err(SearchError::BudgetExceeded(format!(
                "{pairs} pair evaluations exceed the limit of {}",
                self.options.max_pairs
            )));
        }
        Ok(())
    }

    /// Exact `max |D_t(x) ∩ D_{t+k}(y)|` over `x` of length `n`, `y` of
    /// length `n + k` with `d_L(x, y) >= ell`.
    pub fn compute_n(&self, q: NQuery) -> Result<NResult, SearchError> {
        if let Some(hit) = self.memo.lock().unwrap().get(&q) {
            return Ok(*hit);
        }
        let NQuery { n, ell, t, k } = q;
        if t >= n {
            return Err(SearchError::InvalidQuery(format!("need t < n, got t = {t}, n = {n}")));
        }
        if ell > t {
            return Err(SearchError::InvalidQuery(format!(
                "need ell <= t, got ell = {ell}, t = {t}"
            )));
        }
        let m = n + k;
        let unordered = k == 0;
        self.check_budget(n, m, unordered)?;

        let tx = self.table(n, t);
        let ty = if k == 0 { tx.clone() } else { self.table(m, t + k) };
        let symmetry = self.options.symmetry;

        let best = self.run(|| {
            (0..1u64 << n)
                .into_par_iter()
                .map(|x| {
                    let mut best = Best::NONE;
                    let pattern = LcsPattern::new(&Word::from_bits_unchecked(x, n));
                    let ball_x = tx.ball(x);
                    let start = if unordered { x } else { 0 };
                    for y in start..1u64 << m {
                        if n - pattern.lcs(y, m) < ell {
                            continue;
                        }
                        if symmetry && !is_canonical(x, n, y, m, unordered) {
                            continue;
                        }
                        best.offer(sorted_intersection_count(ball_x, ty.ball(y)), (x, y));
                    }
                    best
                })
                .reduce(|| Best::NONE, Best::merge)
        });
        if !best.feasible {
            return Err(SearchError::Infeasible { n, m, ell });
        }
        let result = NResult {
            query: q,
            value: best.value,
            argmax: (
                Word::from_bits_unchecked(best.pair.0, n),
                Word::from_bits_unchecked(best.pair.1, m),
            ),
            pairs_evaluated: best.evaluated,
        };
        self.memo.lock().unwrap().insert(q, result);
        Ok(result)
    }
}

/// One-shot exhaustive `N(n, ell, t)` (or its length-gap variant).
pub fn compute_n_exhaustive(q: NQuery, options: &SearchOptions) -> Result<NResult, SearchError> {
    Searcher::new(options.clone())?.compute_n(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::{ball_size_max, intersection_size};
    use crate::distance::deletion_distance;

    fn opts(symmetry: bool) -> SearchOptions {
        SearchOptions {
            symmetry,
            ..SearchOptions::default()
        }
    }

    /// Oracle: plain double loop over ordered pairs through the public
    /// ball-engine and distance routes.
    fn brute_n(n: usize, ell: usize, t: usize, k: usize) -> u64 {
        let mut best = 0;
        for xb in 0..1u64 << n {
            for yb in 0..1u64 << (n + k) {
                let x = Word::from_bits_unchecked(xb, n);
                let y = Word::from_bits_unchecked(yb, n + k);
                if deletion_distance(&x, &y).value >= ell {
                    best = best.max(intersection_size(&x, &y, t, t + k).unwrap().size);
                }
            }
        }
        best
    }

    #[test]
    fn spec_examples() {
        let o = opts(true);
        assert_eq!(compute_n_exhaustive(NQuery::new(6, 2, 2), &o).unwrap().value, 6);
        assert_eq!(compute_n_exhaustive(NQuery::new(6, 1, 1), &o).unwrap().value, 2);
        for n in 1..=7 {
            for t in 0..n {
                let r = compute_n_exhaustive(NQuery::new(n, 0, t), &o).unwrap();
                assert_eq!(r.value, ball_size_max(n as i64, t as i64));
            }
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        for n in 2..=6 {
            for t in 0..n {
                for ell in 0..=t {
                    for k in 0..=2 {
                        let q = NQuery::new(n, ell, t).with_gap(k);
                        let got = compute_n_exhaustive(q, &opts(true)).unwrap();
                        assert_eq!(got.value, brute_n(n, ell, t, k), "{q:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn symmetry_reduction_is_sound() {
        for n in 2..=8 {
            for t in 0..n {
                for ell in 0..=t.min(3) {
                    let q = NQuery::new(n, ell, t);
                    let a = compute_n_exhaustive(q, &opts(true)).unwrap();
                    let b = compute_n_exhaustive(q, &opts(false)).unwrap();
                    assert_eq!((a.value, a.argmax), (b.value, b.argmax), "{q:?}");
                    assert!(a.pairs_evaluated <= b.pairs_evaluated);
                }
            }
        }
        let q = NQuery::new(5, 1, 2).with_gap(1);
        let a = compute_n_exhaustive(q, &opts(true)).unwrap();
        let b = compute_n_exhaustive(q, &opts(false)).unwrap();
        assert_eq!((a.value, a.argmax), (b.value, b.argmax));
    }

    #[test]
    fn argmax_is_witness() {
        let r = compute_n_exhaustive(NQuery::new(8, 2, 3), &opts(true)).unwrap();
        let (x, y) = r.argmax;
        assert!(deletion_distance(&x, &y).value >= 2);
        assert_eq!(intersection_size(&x, &y, 3, 3).unwrap().size, r.value);
        assert!(x <= y);
    }

    #[test]
    fn independent_of_worker_count() {
        let q = NQuery::new(9, 2, 3);
        let one = compute_n_exhaustive(
            q,
            &SearchOptions {
                jobs: Some(1),
                ..SearchOptions::default()
            },
        )
        .unwrap();
        let three = compute_n_exhaustive(
            q,
            &SearchOptions {
                jobs: Some(3),
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(one, three);
    }

    #[test]
    fn query_errors() {
        let o = SearchOptions::default();
        assert!(matches!(
            compute_n_exhaustive(NQuery::new(4, 1, 4), &o),
            Err(SearchError::InvalidQuery(_))
        ));
        assert!(matches!(
            compute_n_exhaustive(NQuery::new(6, 3, 2), &o),
            Err(SearchError::InvalidQuery(_))
        ));
        assert!(matches!(
            compute_n_exhaustive(NQuery::new(15, 1, 1), &o),
            Err(SearchError::BudgetExceeded(_))
        ));
        let tight = SearchOptions {
            max_pairs: 1000,
            ..SearchOptions::default()
        };
        assert!(matches!(
            compute_n_exhaustive(NQuery::new(8, 1, 1), &tight),
            Err(SearchError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn best_merge_is_order_independent() {
        let mut a = Best::NONE;
        a.offer(3, (5, 9));
        let mut b = Best::NONE;
        b.offer(3, (2, 7));
        let mut c = Best::NONE;
        c.offer(1, (0, 0));
        let ab = a.merge(b).merge(c);
        let ba = c.merge(b.merge(a));
        assert_eq!(ab, ba);
        assert_eq!(ab.pair, (2, 7));
        assert_eq!(ab.evaluated, 3);
    }

    #[test]
    fn canonical_orbit_representative() {
        // orbit of (0011, 0101): complement (1100, 1010), reverse (1100, 1010),
        // complement-reverse (0011, 0101)
        assert!(is_canonical(0b0011, 4, 0b0101, 4, true));
        assert!(!is_canonical(0b1010, 4, 0b1100, 4, true));
    }
}
