//! Extremal code constructions: the constant-weight code (optionally with
//! the zero word adjoined) and the 253-block code of length 23 arising
//! from the weight-7 codewords of the binary Golay code.

use crate::code::{Code, Word};
use crate::error::Error;

/// All C(n, s) words of weight s, plus the zero word when `adjoin_zero`.
///
/// Two weight-s words overlapping in i positions are at distance 2(s-i),
/// so the distance set is contained in {2, 4, ..., 2s}, with equality
/// exactly when n >= 2s (disjoint supports exist). The zero word sits at
/// distance s from everything, which stays inside the even set only for
/// even s; adjoining it with odd s is rejected.
pub fn constant_weight_code(n: usize, s: usize, adjoin_zero: bool) -> Result<Code, Error> {
    if s == 0 || s > n {
        return Err(Error::invalid(format!(
            "need 1 <= s <= n, got s={s}, n={n}"
        )));
    }
    if adjoin_zero && !s.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "cannot adjoin the zero word for odd s={s}: its distance s to every \
             weight-s word falls outside {{2, 4, ..., 2s}}"
        )));
    }

    let mut words = Vec::new();
    if adjoin_zero {
        words.push(Word::zero(n));
    }
    // supports in lexicographic order
    let mut support: Vec<usize> = (0..s).collect();
    loop {
        words.push(Word::from_support(n, &support)?);
        // advance to the next s-combination of {0, ..., n-1}
        let mut i = s;
        loop {
            if i == 0 {
                return Code::new(n, words);
            }
            i -= 1;
            if support[i] != i + n - s {
                break;
            }
        }
        support[i] += 1;
        for j in i + 1..s {
            support[j] = support[j - 1] + 1;
        }
    }
}

/// Generator polynomial of the [23, 12] binary Golay code:
/// x^11 + x^9 + x^7 + x^6 + x^5 + x + 1, as a coefficient bitmask with
/// bit i holding the coefficient of x^i.
const GOLAY_GENERATOR: u32 = 0b1010_1110_0011;

/// The (23, 253, {8,12}) code formed by the supports of the 253 weight-7
/// codewords of the binary Golay code (the blocks of the 4-(23,7,1)
/// design).
///
/// The full [23, 12] cyclic code is enumerated as m(x) * g(x) over all
/// 2^12 message polynomials m; since deg(m*g) <= 22 no reduction mod
/// x^23 - 1 is needed.
pub fn golay_block_code() -> Code {
    let mut blocks = Vec::with_capacity(253);
    let mut weight_counts = [0usize; 24];
    for message in 0u32..1 << 12 {
        let mut product: u32 = 0;
        let mut m = message;
        while m != 0 {
            let i = m.trailing_zeros();
            product ^= GOLAY_GENERATOR << i;
            m &= m - 1;
        }
        let weight = product.count_ones() as usize;
        weight_counts[weight] += 1;
        if weight == 7 {
            let mut w = Word::zero(23);
            for j in 0..23 {
                if product >> j & 1 == 1 {
                    w.set(j, true);
                }
            }
            blocks.push(w);
        }
    }

    // the full weight distribution of the [23,12] Golay code
    let mut expected = [0usize; 24];
    for (weight, count) in [
        (0, 1),
        (7, 253),
        (8, 506),
        (11, 1288),
        (12, 1288),
        (15, 506),
        (16, 253),
        (23, 1),
    ] {
        expected[weight] = count;
    }
    assert_eq!(weight_counts, expected, "Golay weight distribution");

    Code::new(23, blocks).expect("Golay blocks are distinct words of length 23")
}
