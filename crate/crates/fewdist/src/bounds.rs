//! Upper bounds on the size of a binary code with a prescribed distance
//! set, each with an explicit applicability verdict, plus an aggregator
//! reporting the best (smallest) applicable value.
//!
//! Reports are produced in the fixed order: theorem1, theorem2,
//! two_distance, barg_musin, nozaki_shinohara.

use num::{BigInt, One, Signed, Zero};

use crate::code::DistanceSet;
use crate::combinatorics::{binomial, partition_count};
use crate::error::Error;
use crate::krawtchouk::expand_in_krawtchouk;

/// Identifier of one of the five implemented bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundName {
    Theorem1,
    Theorem2,
    TwoDistance,
    BargMusin,
    NozakiShinohara,
}

impl BoundName {
    pub const ALL: [BoundName; 5] = [
        BoundName::Theorem1,
        BoundName::Theorem2,
        BoundName::TwoDistance,
        BoundName::BargMusin,
        BoundName::NozakiShinohara,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BoundName::Theorem1 => "theorem1",
            BoundName::Theorem2 => "theorem2",
            BoundName::TwoDistance => "two_distance",
            BoundName::BargMusin => "barg_musin",
            BoundName::NozakiShinohara => "nozaki_shinohara",
        }
    }
}

impl std::fmt::Display for BoundName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One bound's verdict: whether it applies, and its value when it does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub name: BoundName,
    pub applicable: bool,
    pub value: Option<BigInt>,
    pub notes: String,
}

impl BoundReport {
    fn applies(name: BoundName, value: BigInt, notes: String) -> Self {
        debug_assert!(value >= BigInt::one());
        BoundReport {
            name,
            applicable: true,
            value: Some(value),
            notes,
        }
    }

    fn does_not_apply(name: BoundName, notes: String) -> Self {
        BoundReport {
            name,
            applicable: false,
            value: None,
            notes,
        }
    }
}

fn check_n_s(n: usize, s: usize) -> Result<(), Error> {
    if s == 0 || s > n {
        return Err(Error::invalid(format!(
            "need 1 <= s <= n, got s={s}, n={n} (a length-n binary code admits at most n distinct distances)"
        )));
    }
    Ok(())
}

fn check_distances(n: usize, distances: &DistanceSet) -> Result<(), Error> {
    if distances.max_distance() > n {
        return Err(Error::invalid(format!(
            "distance {} exceeds length {n}",
            distances.max_distance()
        )));
    }
    Ok(())
}

/// Dimension bound C(n+s, s): any code with s distances fits in the space
/// of n-variate polynomials of degree at most s. No restriction on the
/// distances themselves.
pub fn theorem1_bound(n: usize, s: usize) -> Result<BigInt, Error> {
    check_n_s(n, s)?;
    Ok(binomial(n + s, s as isize))
}

/// Refinement of the dimension bound by the even-monomial symmetry:
/// C(n+s, s) - sum over 2t <= s of (C(t+n-1, t) - p(t)).
pub fn theorem2_bound(n: usize, s: usize) -> Result<BigInt, Error> {
    check_n_s(n, s)?;
    let mut value = binomial(n + s, s as isize);
    for t in 0..=(s / 2) {
        value -= binomial(t + n - 1, t as isize) - partition_count(t);
    }
    Ok(value)
}

/// Two-distance bound C(n,2) + 1, stated only for n >= 6; any pair of
/// distances qualifies.
pub fn two_distance_bound(n: usize, distances: &DistanceSet) -> Result<BoundReport, Error> {
    check_distances(n, distances)?;
    let name = BoundName::TwoDistance;
    if distances.s() != 2 {
        return Ok(BoundReport::does_not_apply(
            name,
            format!("requires exactly 2 distances, got {}", distances.s()),
        ));
    }
    if n < 6 {
        return Ok(BoundReport::does_not_apply(
            name,
            format!("stated for n >= 6 only, got n={n}"),
        ));
    }
    Ok(BoundReport::applies(
        name,
        binomial(n, 2) + BigInt::one(),
        "C(n,2)+1; no restriction on the two distances".into(),
    ))
}

/// Barg-Musin bound: if sum_i d_i <= s*n/2 then
/// |C| <= sum_{i=0}^{s-2} C(n,i) + C(n,s).
pub fn barg_musin_bound(n: usize, distances: &DistanceSet) -> Result<BoundReport, Error> {
    check_distances(n, distances)?;
    let name = BoundName::BargMusin;
    let s = distances.s();
    let sum: usize = distances.sum();
    // compare 2 * sum <= s * n to stay in integers
    if 2 * sum > s * n {
        return Ok(BoundReport::does_not_apply(
            name,
            format!("requires sum of distances <= s*n/2: 2*{sum} > {s}*{n}"),
        ));
    }
    let mut value = binomial(n, s as isize);
    for i in 0..s.saturating_sub(1) {
        value += binomial(n, i as isize);
    }
    Ok(BoundReport::applies(
        name,
        value,
        format!("sum of distances {sum} within s*n/2"),
    ))
}

/// Nozaki-Shinohara bound: expand f(t) = prod (d_i - t)/d_i in the
/// Krawtchouk basis and sum C(n,k) over the strictly positive
/// coefficients. Exact zeros contribute nothing.
pub fn nozaki_shinohara_bound(n: usize, distances: &DistanceSet) -> Result<BoundReport, Error> {
    check_distances(n, distances)?;
    let expansion = expand_in_krawtchouk(n, distances)?;
    let mut value = BigInt::zero();
    for (k, f) in expansion.coefficients().iter().enumerate() {
        if f.is_positive() {
            value += binomial(n, k as isize);
        }
    }
    let notes = format!(
        "f signs {}; applied as stated, without further distance restrictions",
        expansion.sign_pattern()
    );
    Ok(BoundReport::applies(
        BoundName::NozakiShinohara,
        value,
        notes,
    ))
}

/// All five bounds, in the documented fixed order, plus the smallest
/// applicable value.
#[derive(Clone, Debug)]
pub struct BoundsSummary {
    pub reports: Vec<BoundReport>,
    pub min_value: BigInt,
}

impl BoundsSummary {
    pub fn report(&self, name: BoundName) -> &BoundReport {
        self.reports.iter().find(|r| r.name == name).unwrap()
    }
}

/// Evaluate every bound for (n, D). theorem1 and theorem2 depend only on
/// n and s = |D| and are always applicable.
pub fn best_bounds(n: usize, distances: &DistanceSet) -> Result<BoundsSummary, Error> {
    check_distances(n, distances)?;
    let s = distances.s();
    let reports = vec![
        BoundReport::applies(
            BoundName::Theorem1,
            theorem1_bound(n, s)?,
            "depends only on (n, s)".into(),
        ),
        BoundReport::applies(
            BoundName::Theorem2,
            theorem2_bound(n, s)?,
            "depends only on (n, s)".into(),
        ),
        two_distance_bound(n, distances)?,
        barg_musin_bound(n, distances)?,
        nozaki_shinohara_bound(n, distances)?,
    ];
    let min_value = reports
        .iter()
        .filter_map(|r| r.value.as_ref())
        .min()
        .cloned()
        .expect("theorem1 is always applicable");
    Ok(BoundsSummary { reports, min_value })
}
