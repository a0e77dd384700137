//! Tabulates the recurrence `N(n, ell, t) = N(n-1, ell, t) + N(n-2, ell, t-1)`
//! from exhaustive values. The recurrence is not proved, so the report
//! records agreement row by row and asserts nothing.

use serde::Serialize;

use super::{NQuery, SearchError, Searcher};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    /// `N(n, ell, t)`
    pub lhs: u64,
    /// `N(n-1, ell, t)`
    pub prev: u64,
    /// `N(n-2, ell, t-1)`, zero when `t - 1 < ell`
    pub prev2: u64,
    pub rhs: u64,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub ell: usize,
    pub t: usize,
    pub rows: Vec<ConjectureRow>,
}

impl ConjectureReport {
    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(|r| r.equal)
    }
}

impl Searcher {
    /// `N(n, ell, t)` with the convention that it vanishes for `t < ell`.
    pub fn n_or_zero(&self, n: usize, ell: usize, t: i64) -> Result<u64, SearchError> {
        if t < ell as i64 {
            return Ok(0);
        }
        Ok(self.compute_n(NQuery::new(n, ell, t as usize))?.value)
    }

    pub fn check_conjecture(
        &self,
        ell: usize,
        t: usize,
        n_min: usize,
        n_max: usize,
    ) -> Result<ConjectureReport, SearchError> {
        if n_min < t + 2 {
            return Err(SearchError::InvalidQuery(format!(
                "the recurrence needs N(n-1, ell, t) with t < n-1, so n >= t + 2 = {}",
                t + 2
            )));
        }
        let mut rows = Vec::new();
        for n in n_min..=n_max {
            let lhs = self.n_or_zero(n, ell, t as i64)?;
            let prev = self.n_or_zero(n - 1, ell, t as i64)?;
            let prev2 = self.n_or_zero(n - 2, ell, t as i64 - 1)?;
            let rhs = prev + prev2;
            rows.push(ConjectureRow {
                n,
                lhs,
                prev,
                prev2,
                rhs,
                equal: lhs == rhs,
            });
        }
        Ok(ConjectureReport { ell, t, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{formula_n1, SearchOptions};
    use super::*;

    #[test]
    fn ell_one_radius_one_holds() {
        let s = Searcher::new(SearchOptions::default()).unwrap();
        let r = s.check_conjecture(1, 1, 4, 10).unwrap();
        assert_eq!(r.rows.len(), 7);
        for row in &r.rows {
            assert_eq!((row.lhs, row.prev, row.prev2), (2, 2, 0));
        }
        assert!(r.all_equal());
    }

    #[test]
    fn ell_one_radius_two_matches_closed_form() {
        let s = Searcher::new(SearchOptions::default()).unwrap();
        let r = s.check_conjecture(1, 2, 5, 10).unwrap();
        for row in &r.rows {
            assert_eq!(row.lhs, formula_n1(row.n, 2).unwrap());
        }
        assert!(r.all_equal());
    }

    #[test]
    fn rejects_too_small_n() {
        let s = Searcher::new(SearchOptions::default()).unwrap();
        assert!(s.check_conjecture(1, 2, 3, 6).is_err());
    }
}
