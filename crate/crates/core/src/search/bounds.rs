//! Closed forms and bounds for `N(n, ell, t)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::SearchError;
use crate::ball::{ball_size_max, binomial};

fn d(n: usize, t: i64) -> u64 {
    ball_size_max(n as i64, t)
}

fn big_binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn factorial(m: u64) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `N(n, 1, t) = 2 D(n - 2, t - 1)` for `1 <= t < n`.
pub fn formula_n1(n: usize, t: usize) -> Result<u64, SearchError> {
    if t < 1 || t >= n {
        return Err(SearchError::InvalidQuery(format!(
            "ell = 1 closed form needs 1 <= t < n, got n = {n}, t = {t}"
        )));
    }
    Ok(2 * d(n - 2, t as i64 - 1))
}

/// The five-term closed form for `N(n, 2, t)`, valid for `2 <= t < n`,
/// `n >= 8`:
/// `2D(n-4,t-2) + 2D(n-5,t-2) + 2D(n-7,t-2) + D(n-6,t-3) + D(n-7,t-3)`.
pub fn formula_n2(n: usize, t: usize) -> Result<u64, SearchError> {
    if t < 2 || t >= n || n < 8 {
        return Err(SearchError::InvalidQuery(format!(
            "ell = 2 closed form needs 2 <= t < n and n >= 8, got n = {n}, t = {t}"
        )));
    }
    let t = t as i64;
    Ok(2 * d(n - 4, t - 2)
        + 2 * d(n - 5, t - 2)
        + 2 * d(n - 7, t - 2)
        + d(n - 6, t - 3)
        + d(n - 7, t - 3))
}

/// Upper bound on `|D_t(x) ∩ D_{t+k}(y)|` for `|x| = n`, `|y| = n + k`,
/// `d_L(x, y) >= ell`: `C(k + 2 ell, ell) n^(t - ell) / (t - ell)!`, and
/// zero when `t < ell`.
pub fn upper_bound(n: usize, ell: usize, t: usize, k: usize) -> BigRational {
    if t < ell {
        return BigRational::zero();
    }
    let e = (t - ell) as u32;
    let numer = big_binomial((k + 2 * ell) as u64, ell as u64) * BigInt::from(n).pow(e);
    BigRational::new(numer, factorial(e as u64))
}

/// `floor(upper_bound(..))`, saturating at `u64::MAX`.
pub fn upper_bound_floor(n: usize, ell: usize, t: usize, k: usize) -> u64 {
    upper_bound(n, ell, t, k).floor().to_integer().to_u64().unwrap_or(u64::MAX)
}

/// `C(2 ell, ell) D(n - 4 ell + 2, t - ell)`, attained by the extremal pair
/// construction; needs `ell >= 1`, `n >= 4 ell - 2`, `t >= ell`.
pub fn lower_bound(n: usize, ell: usize, t: usize) -> Result<u64, SearchError> {
    if ell == 0 || n + 2 < 4 * ell || t < ell {
        return Err(SearchError::InvalidQuery(format!(
            "lower bound needs ell >= 1, n >= 4 ell - 2, t >= ell; got n = {n}, ell = {ell}, t = {t}"
        )));
    }
    Ok(binomial(2 * ell as u64, ell as u64) * d(n + 2 - 4 * ell, (t - ell) as i64))
}

/// A closed-form value of `N(n, ell, t)` where one is known: `ell = 0`
/// (largest ball), `ell = 1`, `ell = 2` with `n >= 8`, and `ell = t` with
/// `n >= 4t - 2`.
pub fn formula_entry(n: usize, ell: usize, t: usize) -> Option<u64> {
    if ell > t || t >= n {
        return None;
    }
    match ell {
        0 => Some(d(n, t as i64)),
        1 => formula_n1(n, t).ok(),
        2 if n >= 8 => formula_n2(n, t).ok(),
        _ if ell == t && n + 2 >= 4 * t => Some(binomial(2 * t as u64, t as u64)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_n1_examples() {
        assert_eq!(formula_n1(6, 1).unwrap(), 2);
        assert_eq!(formula_n1(8, 2).unwrap(), 12);
        assert_eq!(formula_n1(10, 3).unwrap(), 44);
        assert!(formula_n1(4, 0).is_err());
        assert!(formula_n1(4, 4).is_err());
    }

    #[test]
    fn formula_n2_examples() {
        assert_eq!(formula_n2(8, 2).unwrap(), 6);
        assert_eq!(formula_n2(8, 3).unwrap(), 18);
        assert_eq!(formula_n2(11, 2).unwrap(), 6);
        assert!(formula_n2(7, 2).is_err());
        assert!(formula_n2(9, 1).is_err());
    }

    #[test]
    fn upper_bound_examples() {
        for t in 0..=6 {
            for n in t..20 {
                assert_eq!(
                    upper_bound(n, t, t, 0),
                    BigRational::from_integer(BigInt::from(binomial(2 * t as u64, t as u64)))
                );
            }
        }
        assert_eq!(upper_bound(6, 1, 2, 0), BigRational::from_integer(12.into()));
        assert_eq!(upper_bound(9, 3, 2, 1), BigRational::zero());
        // 3 * 7^2 / 2
        assert_eq!(
            upper_bound(7, 1, 3, 1),
            BigRational::new(147.into(), 2.into())
        );
        assert_eq!(upper_bound_floor(7, 1, 3, 1), 73);
        assert_eq!(upper_bound_floor(64, 0, 40, 0), u64::MAX);
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound(6, 2, 2).unwrap(), 6);
        assert_eq!(lower_bound(2, 1, 1).unwrap(), 2);
        assert_eq!(lower_bound(10, 2, 3).unwrap(), 24);
        assert!(lower_bound(5, 2, 2).is_err());
        assert!(lower_bound(6, 2, 1).is_err());
        assert!(lower_bound(6, 0, 1).is_err());
    }

    #[test]
    fn closed_forms_agree_where_they_overlap() {
        // ell = t = 1 and ell = t = 2 are covered by two formulas each
        for n in 2..30 {
            assert_eq!(formula_n1(n, 1).unwrap(), 2);
        }
        for n in 8..30 {
            assert_eq!(formula_n2(n, 2).unwrap(), 6);
        }
        assert_eq!(formula_entry(12, 3, 3), Some(20));
        assert_eq!(formula_entry(9, 3, 3), None);
        assert_eq!(formula_entry(9, 3, 4), None);
        assert_eq!(formula_entry(9, 0, 2), Some(ball_size_max(9, 2)));
    }
}
