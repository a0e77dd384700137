//! Exhaustive check of the intersection upper bound over all pairs of
//! bounded length.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::{is_canonical, upper_bound, upper_bound_floor, Best, LcsPattern, SearchError, Searcher};
use crate::ball::sorted_intersection_count;
use crate::word::Word;

/// Largest `n + k` a bound verification will scan.
pub const MAX_VERIFY_LEN: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub x: Word,
    pub y: Word,
    pub distance: usize,
    pub delta: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SReport {
    pub ell: usize,
    pub t: usize,
    pub k: usize,
    pub n_max: usize,
    pub pairs_checked: u64,
    pub max_delta: u64,
    /// The pair closest to the bound (largest `delta / bound`); when the
    /// bound is zero, the pair with the largest `delta`.
    pub tightest: Option<PairReport>,
    pub violations: Vec<PairReport>,
}

impl SReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Partial {
    best: Best,
    violations: Vec<(u64, u64, usize, u64)>,
}

impl Searcher {
    /// Checks `|D_t(x) ∩ D_{t+k}(y)| <= upper_bound(n, ell, t, k)` for every
    /// `x` of length `n <= n_max`, `y` of length `n + k` with
    /// `d_L(x, y) >= ell`. Lengths start at `max(t, ell)`: shorter `x` has an
    /// empty radius-`t` ball or no partner at distance `ell`.
    pub fn verify_s(&self, ell: usize, t: usize, k: usize, n_max: usize) -> Result<SReport, SearchError> {
        if n_max + k > MAX_VERIFY_LEN {
            return Err(SearchError::BudgetExceeded(format!(
                "n_max + k = {} exceeds {MAX_VERIFY_LEN}",
                n_max + k
            )));
        }
        let mut report = SReport {
            ell,
            t,
            k,
            n_max,
            pairs_checked: 0,
            max_delta: 0,
            tightest: None,
            violations: Vec::new(),
        };
        let mut tightest_ratio: Option<BigRational> = None;
        let unordered = k == 0;
        let symmetry = self.options.symmetry;

        for n in t.max(ell)..=n_max {
            let m = n + k;
            self.check_budget(n, m, unordered)?;
            let tx = self.table(n, t);
            let ty = self.table(m, t + k);
            let limit = upper_bound_floor(n, ell, t, k);

            let partial = self.run(|| {
                (0..1u64 << n)
                    .into_par_iter()
                    .map(|x| {
                        let mut part = Partial {
                            best: Best::NONE,
                            violations: Vec::new(),
                        };
                        let pattern = LcsPattern::new(&Word::from_bits_unchecked(x, n));
                        let ball_x = tx.ball(x);
                        let start = if unordered { x } else { 0 };
                        for y in start..1u64 << m {
                            let distance = n - pattern.lcs(y, m);
                            if distance < ell {
                                continue;
                            }
                            if symmetry && !is_canonical(x, n, y, m, unordered) {
                                continue;
                            }
                            let delta = sorted_intersection_count(ball_x, ty.ball(y));
                            part.best.offer(delta, (x, y));
                            if delta > limit {
                                part.violations.push((x, y, distance, delta));
                            }
                        }
                        part
                    })
                    .reduce(
                        || Partial {
                            best: Best::NONE,
                            violations: Vec::new(),
                        },
                        |mut a, b| {
                            a.best = a.best.merge(b.best);
                            a.violations.extend(b.violations);
                            a
                        },
                    )
            });

            report.pairs_checked += partial.best.evaluated;
            let mut violations = partial.violations;
            violations.sort_unstable();
            report.violations.extend(violations.into_iter().map(|(x, y, distance, delta)| {
                PairReport {
                    x: Word::from_bits_unchecked(x, n),
                    y: Word::from_bits_unchecked(y, m),
                    distance,
                    delta,
                }
            }));
            if !partial.best.feasible {
                continue;
            }
            let best = partial.best;
            report.max_delta = report.max_delta.max(best.value);
            let bound = upper_bound(n, ell, t, k);
            let ratio = if bound == BigRational::from_integer(BigInt::from(0)) {
                BigRational::from_integer(BigInt::from(best.value))
            } else {
                BigRational::from_integer(BigInt::from(best.value)) / bound
            };
            if tightest_ratio.as_ref().is_none_or(|r| ratio > *r) {
                let (x, y) = (
                    Word::from_bits_unchecked(best.pair.0, n),
                    Word::from_bits_unchecked(best.pair.1, m),
                );
                report.tightest = Some(PairReport {
                    x,
                    y,
                    distance: crate::distance::distance_value(&x, &y),
                    delta: best.value,
                });
                tightest_ratio = Some(ratio);
            }
        }
        Ok(report)
    }
}
