//! Exact integer and rational helpers: big binomial coefficients, the
//! integer partition function, and exact linear solving / rank.
//!
//! Everything here is exact. Floating point is forbidden on any path that
//! feeds a sign decision in the bounds module.

pub use num::{BigInt, BigRational};

use num::{One, Signed, Zero};

use crate::error::Error;

/// Binomial coefficient C(a, b), with C(a, b) = 0 for b outside [0, a].
///
/// The out-of-range convention matches the Krawtchouk summation, where
/// C(x, j) vanishes for j > x.
pub fn binomial(a: usize, b: isize) -> BigInt {
    if b < 0 || b as usize > a {
        return BigInt::zero();
    }
    let b = (b as usize).min(a - b as usize);
    let mut result = BigInt::one();
    for i in 0..b {
        result = result * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    result
}

/// Number of integer partitions of `t`, with p(0) = 1.
///
/// Coin-style dynamic programming over parts 1..=t; exact for any `t`
/// that fits in memory.
pub fn partition_count(t: usize) -> BigInt {
    let mut table = vec![BigInt::zero(); t + 1];
    table[0] = BigInt::one();
    for part in 1..=t {
        for i in part..=t {
            let add = table[i - part].clone();
            table[i] += add;
        }
    }
    table.swap_remove(t)
}

/// Canonical height of a rational: max(|numerator|, denominator).
///
/// Used as the pivot-selection key in exact elimination to keep entry
/// growth bounded.
fn height(r: &BigRational) -> BigInt {
    r.numer().abs().max(r.denom().clone())
}

/// Solve `matrix * x = rhs` exactly over the rationals.
///
/// The matrix must be square and nonsingular; a singular matrix is
/// reported as an error rather than silently returning garbage.
#[allow(clippy::needless_range_loop)]
pub fn solve_linear_exact(
    matrix: &[Vec<BigRational>],
    rhs: &[BigRational],
) -> Result<Vec<BigRational>, Error> {
    let n = matrix.len();
    if rhs.len() != n || matrix.iter().any(|row| row.len() != n) {
        return Err(Error::invalid("solve_linear_exact: shape mismatch"));
    }

    // Augmented matrix, eliminated in place.
    let mut a: Vec<Vec<BigRational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut v = row.clone();
            v.push(r.clone());
            v
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| height(&a[r][col]))
            .ok_or(Error::SingularMatrix { column: col })?;
        a.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..=n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }

    Ok(a.iter_mut()
        .enumerate()
        .map(|(i, row)| {
            let rhs = row.pop().unwrap();
            rhs / &row[i]
        })
        .collect())
}

/// Rank of a rational matrix by exact Gaussian elimination with
/// min-height pivoting.
pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");

    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot_row) = (rank..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| height(&rows[r][col]))
        else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        let (pivot_slice, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &pivot_slice[rank];
        for row in rest {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot;
            for c in col..cols {
                let sub = &factor * &pivot_row[c];
                row[c] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(8, 2), BigInt::from(28));
        assert_eq!(binomial(23, 2), BigInt::from(253));
        assert_eq!(binomial(5, 7), BigInt::zero());
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn binomial_symmetry() {
        for a in 0..20usize {
            for b in 0..=a {
                assert_eq!(binomial(a, b as isize), binomial(a, (a - b) as isize));
            }
        }
    }

    #[test]
    fn partition_small_values() {
        // p(4): 4, 3+1, 2+2, 2+1+1, 1+1+1+1
        assert_eq!(partition_count(0), BigInt::one());
        assert_eq!(partition_count(1), BigInt::one());
        assert_eq!(partition_count(4), BigInt::from(5));
        assert_eq!(partition_count(5), BigInt::from(7));
    }

    /// Count partitions of `t` with all parts at most `max`, by direct
    /// enumeration. Independent oracle for `partition_count`.
    fn brute_partitions(t: usize, max: usize) -> u64 {
        if t == 0 {
            return 1;
        }
        (1..=max.min(t))
            .map(|part| brute_partitions(t - part, part))
            .sum()
    }

    #[test]
    fn partition_matches_enumeration_up_to_25() {
        for t in 0..=25 {
            assert_eq!(
                partition_count(t),
                BigInt::from(brute_partitions(t, t)),
                "p({t})"
            );
        }
    }

    #[test]
    fn partition_twenty() {
        // value confirmed by the enumeration oracle above
        assert_eq!(partition_count(20), BigInt::from(627));
    }

    #[test]
    fn hockey_stick_small() {
        for n in 1..=12usize {
            for s in 0..=12usize {
                let lhs: BigInt = (0..=s).map(|j| binomial(n + j - 1, j as isize)).sum();
                assert_eq!(lhs, binomial(n + s, s as isize));
            }
        }
    }

    #[test]
    fn solve_identity() {
        let id = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]];
        let rhs = vec![rat(3, 7), rat(-2, 5)];
        assert_eq!(solve_linear_exact(&id, &rhs).unwrap(), rhs);
    }

    #[test]
    fn solve_lower_triangular() {
        let m = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(1, 1), rat(1, 1)]];
        let rhs = vec![rat(1, 1), rat(3, 1)];
        assert_eq!(
            solve_linear_exact(&m, &rhs).unwrap(),
            vec![rat(1, 1), rat(2, 1)]
        );
    }

    #[test]
    fn solve_singular_is_an_error() {
        let m = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        let rhs = vec![rat(1, 1), rat(2, 1)];
        assert!(matches!(
            solve_linear_exact(&m, &rhs),
            Err(Error::SingularMatrix { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(
            rational_rank(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)],]),
            1
        );
        assert_eq!(
            rational_rank(vec![
                vec![rat(1, 2), rat(0, 1), rat(1, 1)],
                vec![rat(0, 1), rat(1, 3), rat(1, 1)],
            ]),
            2
        );
        assert_eq!(rational_rank(vec![vec![rat(0, 1); 3]; 2]), 0);
    }
}
