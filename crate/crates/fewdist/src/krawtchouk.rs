//! Exact Krawtchouk polynomial values and the Krawtchouk expansion of the
//! annihilator polynomial f(t) = prod_i (d_i - t)/d_i.
//!
//! The expansion drives a sign-critical bound, so every number here is an
//! exact integer or rational; the zero coefficient at (n=6, D={2,4}) is a
//! regression case for exactness.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::code::DistanceSet;
use crate::combinatorics::{binomial, solve_linear_exact};
use crate::error::Error;

/// Value of the Krawtchouk polynomial
/// `phi_k(x) = sum_j (-1)^j C(x,j) C(n-x,k-j)` at integer `x`.
pub fn krawtchouk_eval(n: usize, k: usize, x: usize) -> Result<BigInt, Error> {
    if k > n {
        return Err(Error::invalid(format!("krawtchouk: k={k} exceeds n={n}")));
    }
    if x > n {
        return Err(Error::invalid(format!("krawtchouk: x={x} exceeds n={n}")));
    }
    let mut sum = BigInt::zero();
    for j in 0..=k {
        let term = binomial(x, j as isize) * binomial(n - x, (k - j) as isize);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// Exact value of f(t) = prod_i (d_i - t)/d_i; zero exactly on the
/// distance set, one at t = 0.
pub fn annihilator_eval(distances: &DistanceSet, t: i64) -> BigRational {
    let mut value = BigRational::one();
    for &d in distances.distances() {
        value *= BigRational::new(BigInt::from(d as i64 - t), BigInt::from(d));
    }
    value
}

/// The coefficients f_0..f_s of f(t) in the Krawtchouk basis for a given
/// ambient length n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrawtchoukExpansion {
    n: usize,
    coefficients: Vec<BigRational>,
}

impl KrawtchoukExpansion {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Degree s of the expansion; there are s+1 coefficients.
    pub fn s(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    /// Evaluate `sum_k f_k phi_k(t)` at an integer point of [0, n].
    pub fn eval(&self, t: usize) -> Result<BigRational, Error> {
        let mut sum = BigRational::zero();
        for (k, f) in self.coefficients.iter().enumerate() {
            sum += f * BigRational::from(krawtchouk_eval(self.n, k, t)?);
        }
        Ok(sum)
    }

    /// Sign pattern of the coefficients as a string, e.g. `(+, 0, +)`.
    pub fn sign_pattern(&self) -> String {
        let signs: Vec<&str> = self
            .coefficients
            .iter()
            .map(|f| {
                if f.is_zero() {
                    "0"
                } else if f.is_positive() {
                    "+"
                } else {
                    "-"
                }
            })
            .collect();
        format!("({})", signs.join(", "))
    }
}

/// Expand f(t) = prod_i (d_i - t)/d_i in the Krawtchouk basis of length n.
///
/// Solves the (s+1) x (s+1) interpolation system at t = 0..s; the matrix
/// is nonsingular because phi_k has exact degree k. Interpolation costs
/// O(s^3) rational operations, against 2^n terms for the orthogonality
/// inversion formula.
pub fn expand_in_krawtchouk(
    n: usize,
    distances: &DistanceSet,
) -> Result<KrawtchoukExpansion, Error> {
    if distances.max_distance() > n {
        return Err(Error::invalid(format!(
            "distance {} exceeds length {n}",
            distances.max_distance()
        )));
    }
    let s = distances.s();
    let mut matrix = Vec::with_capacity(s + 1);
    let mut rhs = Vec::with_capacity(s + 1);
    for t in 0..=s {
        let row: Result<Vec<BigRational>, Error> = (0..=s)
            .map(|k| Ok(BigRational::from(krawtchouk_eval(n, k, t)?)))
            .collect();
        matrix.push(row?);
        rhs.push(annihilator_eval(distances, t as i64));
    }
    let coefficients = solve_linear_exact(&matrix, &rhs)?;
    Ok(KrawtchoukExpansion { n, coefficients })
}
