//! The separator polynomials attached to codewords, their exact sparse
//! expansion over the monomial basis, and the structural checks built on
//! them: the diagonal evaluation matrix, linear independence of the
//! expanded polynomials, and the even-monomial coefficient formula with
//! its permutation symmetry.
//!
//! For a binary word v of weight w and distance set D = {d_1 < ... < d_s},
//! the separator is
//!
//! ```text
//! P_v(x) = prod_i (d_i - (x,1) - (v,1) + 2 (v,x))
//!        = prod_i (c_i + sum_j s_j x_j),   c_i = d_i - w,
//! ```
//!
//! where s_j is +1 when v_j = 1 and -1 when v_j = 0. P_v takes the value
//! prod_i d_i at v itself and vanishes at every other word whose distance
//! to v lies in D.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};

use crate::code::{Code, DistanceSet, Word};
use crate::combinatorics::{binomial, rational_rank};
use crate::error::Error;

/// Default cap on the number of monomials an expansion may produce,
/// i.e. on C(n+s, s).
pub const DEFAULT_TERM_GUARD: usize = 2_000_000;

/// Exponent vector of a monomial over n variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn all_even(&self) -> bool {
        self.0.iter().all(|&e| e % 2 == 0)
    }

    /// Doubled copy: alpha -> 2*alpha.
    pub fn doubled(&self) -> Self {
        ExponentVector(self.0.iter().map(|&e| 2 * e).collect())
    }

    /// Exponents sorted descending; two vectors are permutations of each
    /// other exactly when their signatures agree.
    pub fn signature(&self) -> Vec<u32> {
        let mut sig = self.0.clone();
        sig.sort_unstable_by(|a, b| b.cmp(a));
        sig
    }
}

/// Sparse multivariate polynomial with exact rational coefficients; zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultivariatePolynomial {
    n: usize,
    terms: BTreeMap<ExponentVector, BigRational>,
}

impl MultivariatePolynomial {
    pub fn constant(n: usize, value: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(ExponentVector::zeros(n), value);
        }
        MultivariatePolynomial { n, terms }
    }

    /// Number of variables.
    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(ExponentVector::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of the given monomial; zero when absent.
    pub fn coefficient(&self, exponents: &ExponentVector) -> BigRational {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn evaluate(&self, x: &[BigRational]) -> Result<BigRational, Error> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch(self.n, x.len()));
        }
        let mut sum = BigRational::zero();
        for (exps, coef) in &self.terms {
            let mut term = coef.clone();
            for (j, &e) in exps.exponents().iter().enumerate() {
                for _ in 0..e {
                    term *= &x[j];
                }
            }
            sum += term;
        }
        Ok(sum)
    }

    /// Multiply in place by the affine factor `c + sum_j signs_j x_j`.
    fn mul_affine(&mut self, c: &BigRational, signs: &[i8]) {
        let mut next: BTreeMap<ExponentVector, BigRational> = BTreeMap::new();
        for (exps, coef) in &self.terms {
            if !c.is_zero() {
                let add = coef * c;
                add_term(&mut next, exps.clone(), add);
            }
            for (j, &sign) in signs.iter().enumerate() {
                let mut bumped = exps.clone();
                bumped.0[j] += 1;
                let add = if sign > 0 {
                    coef.clone()
                } else {
                    -coef.clone()
                };
                add_term(&mut next, bumped, add);
            }
        }
        self.terms = next;
    }
}

fn add_term(
    terms: &mut BTreeMap<ExponentVector, BigRational>,
    exps: ExponentVector,
    add: BigRational,
) {
    use std::collections::btree_map::Entry;
    match terms.entry(exps) {
        Entry::Vacant(e) => {
            if !add.is_zero() {
                e.insert(add);
            }
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += add;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn word_signs(v: &Word) -> Vec<i8> {
    (0..v.len())
        .map(|j| if v.get(j) { 1 } else { -1 })
        .collect()
}

/// Rational coordinates of a binary word, for evaluation points.
pub fn word_coordinates(w: &Word) -> Vec<BigRational> {
    (0..w.len())
        .map(|j| {
            if w.get(j) {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect()
}

/// Evaluate the separator of `v` at the point `x`, in product form
/// without expansion.
pub fn eval_separator(
    v: &Word,
    distances: &DistanceSet,
    x: &[BigRational],
) -> Result<BigRational, Error> {
    if x.len() != v.len() {
        return Err(Error::LengthMismatch(v.len(), x.len()));
    }
    let x_sum: BigRational = x.iter().sum();
    let vx_sum: BigRational = (0..v.len()).filter(|&j| v.get(j)).map(|j| &x[j]).sum();
    let weight = BigRational::from(BigInt::from(v.weight()));

    let mut product = BigRational::one();
    for &d in distances.distances() {
        let factor = BigRational::from(BigInt::from(d)) - &x_sum - &weight + &vx_sum + &vx_sum;
        if factor.is_zero() {
            return Ok(BigRational::zero());
        }
        product *= factor;
    }
    Ok(product)
}

fn check_guard(n: usize, s: usize, max_terms: usize) -> Result<(), Error> {
    let dim = binomial(n + s, s as isize);
    if dim > BigInt::from(max_terms) {
        return Err(Error::ResourceLimit {
            what: "polynomial expansion".into(),
            required: dim.to_string(),
            limit: max_terms.to_string(),
        });
    }
    Ok(())
}

/// Fully expand the separator of `v` over the monomial basis.
///
/// Refuses when the degree-s monomial space C(n+s, s) exceeds `max_terms`.
pub fn expand_separator(
    v: &Word,
    distances: &DistanceSet,
    max_terms: usize,
) -> Result<MultivariatePolynomial, Error> {
    let n = v.len();
    let s = distances.s();
    check_guard(n, s, max_terms)?;

    let signs = word_signs(v);
    let weight = v.weight() as i64;
    let mut poly = MultivariatePolynomial::constant(n, BigRational::one());
    for &d in distances.distances() {
        let c = BigRational::from(BigInt::from(d as i64 - weight));
        poly.mul_affine(&c, &signs);
    }
    debug_assert!(poly.total_degree() <= s);
    Ok(poly)
}

fn check_all_distances_in(code: &Code, distances: &DistanceSet) -> Result<(), Error> {
    let words = code.words();
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            let d = u.distance(v)?;
            if !distances.contains(d) {
                return Err(Error::DistanceOutsideSet {
                    u: u.to_string(),
                    v: v.to_string(),
                    distance: d,
                });
            }
        }
    }
    Ok(())
}

/// Matrix M[i][j] = P_{u_i}(u_j) over the codewords.
///
/// For a code whose distances all lie in D this is prod_i d_i times the
/// identity; computing it honestly (product form at rational coordinates)
/// is the executable form of that claim.
pub fn evaluation_matrix(
    code: &Code,
    distances: &DistanceSet,
) -> Result<Vec<Vec<BigRational>>, Error> {
    check_all_distances_in(code, distances)?;
    let coords: Vec<Vec<BigRational>> = code.words().iter().map(word_coordinates).collect();
    code.words()
        .iter()
        .map(|u| {
            coords
                .iter()
                .map(|x| eval_separator(u, distances, x))
                .collect()
        })
        .collect()
}

/// Outcome of the linear-independence check on the expanded separators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    pub independent: bool,
    pub rank: usize,
}

/// Expand every codeword's separator, form the coefficient matrix over
/// the monomial basis, and compute its exact rank.
///
/// The separators of a valid code are always linearly independent, so a
/// `false` here indicates an implementation bug; callers should surface
/// it loudly rather than continue.
pub fn linear_independence(
    code: &Code,
    distances: &DistanceSet,
    max_terms: usize,
) -> Result<IndependenceReport, Error> {
    check_all_distances_in(code, distances)?;
    check_guard(code.n(), distances.s(), max_terms)?;

    let polys: Vec<MultivariatePolynomial> = code
        .words()
        .iter()
        .map(|u| expand_separator(u, distances, max_terms))
        .collect::<Result<_, _>>()?;

    // Columns: every monomial appearing in any expansion.
    let mut columns: BTreeMap<ExponentVector, usize> = BTreeMap::new();
    for p in &polys {
        for (exps, _) in p.terms() {
            let next = columns.len();
            columns.entry(exps.clone()).or_insert(next);
        }
    }

    let rows: Vec<Vec<BigRational>> = polys
        .iter()
        .map(|p| {
            let mut row = vec![BigRational::zero(); columns.len()];
            for (exps, coef) in p.terms() {
                row[columns[exps]] = coef.clone();
            }
            row
        })
        .collect();

    let rank = rational_rank(rows);
    let dim = binomial(code.n() + distances.s(), distances.s() as isize);
    assert!(
        BigInt::from(rank) <= dim,
        "rank {rank} exceeds the degree-{} space dimension {dim}",
        distances.s()
    );
    Ok(IndependenceReport {
        independent: rank == code.len(),
        rank,
    })
}

fn elementary_symmetric(values: &[BigInt], m: usize) -> BigInt {
    if m > values.len() {
        return BigInt::zero();
    }
    let mut e = vec![BigInt::zero(); m + 1];
    e[0] = BigInt::one();
    for v in values {
        for k in (1..=m).rev() {
            let add = v * &e[k - 1];
            e[k] += add;
        }
    }
    e.swap_remove(m)
}

/// Coefficient of the all-even monomial x^(2*alpha) in the separator of
/// any word of weight `v_weight`, computed from the closed formula
///
/// ```text
/// multinomial(2t; 2a_1, ..., 2a_n) * e_{s-2t}(d_1 - w, ..., d_s - w)
/// ```
///
/// with t the total degree of alpha and e the elementary symmetric
/// polynomial over unordered index subsets. The value depends on v only
/// through its weight, which is what makes the symmetry reduction work.
pub fn even_monomial_coefficient(
    v_weight: usize,
    distances: &DistanceSet,
    alpha: &ExponentVector,
) -> Result<BigRational, Error> {
    let s = distances.s();
    let t = alpha.total_degree();
    if 2 * t > s {
        return Err(Error::invalid(format!(
            "even monomial degree 2*{t} exceeds s={s}"
        )));
    }

    let mut multinomial = BigInt::one();
    let mut remaining = 2 * t;
    for &a in alpha.exponents() {
        multinomial *= binomial(remaining, 2 * a as isize);
        remaining -= 2 * a as usize;
    }

    let shifted: Vec<BigInt> = distances
        .distances()
        .iter()
        .map(|&d| BigInt::from(d as i64 - v_weight as i64))
        .collect();
    Ok(BigRational::from(
        multinomial * elementary_symmetric(&shifted, s - 2 * t),
    ))
}

/// Check that in the expanded separator of `v`, monomials with all-even
/// exponent vectors that are permutations of one another carry equal
/// coefficients. Always true for binary `v`.
pub fn even_permutation_symmetry(
    v: &Word,
    distances: &DistanceSet,
    max_terms: usize,
) -> Result<bool, Error> {
    let poly = expand_separator(v, distances, max_terms)?;
    let n = v.len();

    let mut groups: BTreeMap<Vec<u32>, (BigRational, usize)> = BTreeMap::new();
    for (exps, coef) in poly.terms() {
        if !exps.all_even() {
            continue;
        }
        let entry = groups
            .entry(exps.signature())
            .or_insert_with(|| (coef.clone(), 0));
        if entry.0 != *coef {
            return Ok(false);
        }
        entry.1 += 1;
    }

    // A class member missing from the term map would have coefficient
    // zero, unequal to the stored (nonzero) common value: every class
    // must be complete.
    for (signature, (_, found)) in &groups {
        if BigInt::from(*found) != permutation_count(n, signature) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Check every admissible even monomial of the expanded separator of `v`
/// against the closed formula: the coefficient of x^(2*alpha) must equal
/// `even_monomial_coefficient(wt(v), D, alpha)` for all alpha with
/// 2 * |alpha| <= s.
pub fn even_formula_agreement(
    v: &Word,
    distances: &DistanceSet,
    max_terms: usize,
) -> Result<bool, Error> {
    let poly = expand_separator(v, distances, max_terms)?;
    let n = v.len();
    let s = distances.s();
    let mut alpha = vec![0u32; n];
    loop {
        let vector = ExponentVector::new(alpha.clone());
        let formula = even_monomial_coefficient(v.weight(), distances, &vector)?;
        if poly.coefficient(&vector.doubled()) != formula {
            return Ok(false);
        }
        if !next_bounded_vector(&mut alpha, s / 2) {
            return Ok(true);
        }
    }
}

/// Advance `alpha` through all vectors with total degree at most `cap`,
/// odometer style; false once exhausted.
fn next_bounded_vector(alpha: &mut [u32], cap: usize) -> bool {
    let total: usize = alpha.iter().map(|&e| e as usize).sum();
    let mut prefix = 0usize;
    for j in 0..alpha.len() {
        // bumping position j and zeroing everything before it
        if total - prefix < cap {
            alpha[j] += 1;
            for e in alpha.iter_mut().take(j) {
                *e = 0;
            }
            return true;
        }
        prefix += alpha[j] as usize;
    }
    false
}

/// Number of distinct rearrangements of `signature` over n positions:
/// n! / prod over repeated values v of (count_v)!. Entries beyond the
/// signature's length count as zeros.
fn permutation_count(n: usize, signature: &[u32]) -> BigInt {
    assert!(signature.len() <= n && signature.windows(2).all(|p| p[0] >= p[1]));
    let mut count = factorial(n);
    let mut implicit_zeros = n - signature.len();
    let mut i = 0;
    while i < signature.len() {
        let mut j = i + 1;
        while j < signature.len() && signature[j] == signature[i] {
            j += 1;
        }
        let mut run = j - i;
        if signature[i] == 0 {
            run += implicit_zeros;
            implicit_zeros = 0;
        }
        count /= factorial(run);
        i = j;
    }
    count / factorial(implicit_zeros)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}
