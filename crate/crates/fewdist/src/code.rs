//! Binary words, codes, and distance sets, plus the code file format.
//!
//! Words are packed into 64-bit blocks so that weight and distance are
//! population-count operations; the length is bounded only by memory.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError};

/// A binary word of fixed length.
///
/// Bit `j` of the word corresponds to character `j` of its string form;
/// unused high bits of the last block are kept zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    len: usize,
    blocks: Vec<u64>,
}

impl Word {
    /// The all-zero word of length `n`.
    pub fn zero(n: usize) -> Self {
        Word {
            len: n,
            blocks: vec![0; n.div_ceil(64)],
        }
    }

    /// Word of length `n` with ones exactly at the given positions.
    pub fn from_support(n: usize, support: &[usize]) -> Result<Self, Error> {
        let mut w = Word::zero(n);
        for &j in support {
            if j >= n {
                return Err(Error::invalid(format!(
                    "support position {j} out of range for length {n}"
                )));
            }
            w.set(j, true);
        }
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, j: usize) -> bool {
        assert!(j < self.len, "bit index {j} out of range");
        self.blocks[j >> 6] >> (j & 63) & 1 == 1
    }

    pub fn set(&mut self, j: usize, value: bool) {
        assert!(j < self.len, "bit index {j} out of range");
        if value {
            self.blocks[j >> 6] |= 1 << (j & 63);
        } else {
            self.blocks[j >> 6] &= !(1 << (j & 63));
        }
    }

    /// Hamming weight: the number of one-bits.
    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Hamming distance to another word of the same length.
    pub fn distance(&self, other: &Word) -> Result<usize, Error> {
        if self.len != other.len {
            return Err(Error::LengthMismatch(self.len, other.len));
        }
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    /// Bitwise exclusive-or. Panics on length mismatch.
    pub fn xor(&self, other: &Word) -> Word {
        assert_eq!(self.len, other.len, "xor of words of different lengths");
        Word {
            len: self.len,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    /// Bitwise and. Panics on length mismatch.
    pub fn and(&self, other: &Word) -> Word {
        assert_eq!(self.len, other.len, "and of words of different lengths");
        Word {
            len: self.len,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Bitwise complement within the word length.
    pub fn complement(&self) -> Word {
        let mut blocks: Vec<u64> = self.blocks.iter().map(|b| !b).collect();
        let tail = self.len & 63;
        if tail != 0 {
            if let Some(last) = blocks.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        Word {
            len: self.len,
            blocks,
        }
    }

    /// Positions of the one-bits, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (i, &block) in self.blocks.iter().enumerate() {
            let mut b = block;
            while b != 0 {
                out.push(i * 64 + b.trailing_zeros() as usize);
                b &= b - 1;
            }
        }
        out
    }
}

impl Ord for Word {
    /// Lexicographic order of the bit-string form ('0' < '1', position 0 first).
    fn cmp(&self, other: &Word) -> Ordering {
        // Reversing each block puts position 0 at the most significant bit,
        // so numeric comparison of reversed blocks is string order.
        for (a, b) in self.blocks.iter().zip(&other.blocks) {
            match a.reverse_bits().cmp(&b.reverse_bits()) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len {
            f.write_str(if self.get(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut w = Word::zero(s.len());
        for (j, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => w.set(j, true),
                _ => {
                    return Err(Error::invalid(format!(
                        "invalid character {c:?} in word {s:?}"
                    )))
                }
            }
        }
        Ok(w)
    }
}

/// A finite set of distinct binary words of common length `n`.
///
/// Words are held sorted lexicographically, which makes serialization and
/// iteration deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct Code {
    n: usize,
    words: Vec<Word>,
}

impl Code {
    /// Build a code from distinct words of length `n`.
    pub fn new(n: usize, mut words: Vec<Word>) -> Result<Self, Error> {
        for w in &words {
            if w.len() != n {
                return Err(Error::LengthMismatch(n, w.len()));
            }
        }
        words.sort_unstable();
        for pair in words.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::invalid(format!("duplicate word {}", pair[0])));
            }
        }
        Ok(Code { n, words })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Words in lexicographic order.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// The set of pairwise distances between distinct codewords.
    ///
    /// Errors for codes with fewer than two words: there is no pair to
    /// take a distance of, and an empty distance set is meaningless to
    /// every consumer downstream.
    pub fn distance_set(&self) -> Result<DistanceSet, Error> {
        if self.words.len() < 2 {
            return Err(Error::EmptyDistanceSet);
        }
        let mut seen = BTreeSet::new();
        for (i, u) in self.words.iter().enumerate() {
            for v in &self.words[i + 1..] {
                seen.insert(u.distance(v)?);
            }
        }
        DistanceSet::new(seen.into_iter().collect())
    }

    /// Translate the whole code by `w` (bitwise xor); preserves all
    /// pairwise distances.
    pub fn translate(&self, w: &Word) -> Code {
        let mut words: Vec<Word> = self.words.iter().map(|u| u.xor(w)).collect();
        words.sort_unstable();
        Code { n: self.n, words }
    }

    /// Parse the code file format.
    ///
    /// Format: optional comment lines starting with `#`, then a header
    /// line `n M`, then exactly `M` word lines of exactly `n` characters
    /// from `{0,1}`, every line newline-terminated, nothing after.
    pub fn parse(input: &[u8]) -> Result<Self, ParseError> {
        let mut lines = LineReader::new(input);

        // Comments are only permitted before the header.
        let (header_line, header) = loop {
            match lines.next_line()? {
                Some((no, content)) if content.first() == Some(&b'#') => {
                    let _ = no;
                }
                Some((no, content)) => break (no, content),
                None => return Err(ParseError::MalformedHeader { line: lines.line }),
            }
        };

        let header_str = std::str::from_utf8(header)
            .map_err(|_| ParseError::MalformedHeader { line: header_line })?;
        let mut parts = header_str.split(' ');
        let n: usize = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or(ParseError::MalformedHeader { line: header_line })?;
        let declared: usize = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or(ParseError::MalformedHeader { line: header_line })?;
        if parts.next().is_some() || n == 0 {
            return Err(ParseError::MalformedHeader { line: header_line });
        }

        let mut words: Vec<Word> = Vec::with_capacity(declared);
        let mut seen = BTreeSet::new();
        for _ in 0..declared {
            let (line_no, content) = match lines.next_line()? {
                Some(line) => line,
                None => {
                    return Err(ParseError::CountMismatch {
                        line: lines.line,
                        declared,
                        found: words.len(),
                    })
                }
            };
            if content.len() != n {
                return Err(ParseError::WrongLineLength {
                    line: line_no,
                    expected: n,
                    found: content.len(),
                });
            }
            let mut w = Word::zero(n);
            for (j, &byte) in content.iter().enumerate() {
                match byte {
                    b'0' => {}
                    b'1' => w.set(j, true),
                    _ => {
                        return Err(ParseError::InvalidCharacter {
                            line: line_no,
                            found: byte as char,
                        })
                    }
                }
            }
            if !seen.insert(w.clone()) {
                return Err(ParseError::DuplicateWord {
                    line: line_no,
                    word: w.to_string(),
                });
            }
            words.push(w);
        }

        if lines.next_line()?.is_some() {
            return Err(ParseError::CountMismatch {
                line: lines.line,
                declared,
                found: declared + 1,
            });
        }

        words.sort_unstable();
        Ok(Code { n, words })
    }

    /// Serialize to the code file format, words in lexicographic order.
    pub fn serialize(&self) -> String {
        let mut out = String::with_capacity(16 + self.words.len() * (self.n + 1));
        out.push_str(&format!("{} {}\n", self.n, self.words.len()));
        for w in &self.words {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code(n={}, M={})", self.n, self.words.len())
    }
}

/// Splits input into newline-terminated lines, tracking line numbers.
struct LineReader<'a> {
    rest: &'a [u8],
    line: usize,
}

impl<'a> LineReader<'a> {
    fn new(input: &'a [u8]) -> Self {
        LineReader {
            rest: input,
            line: 0,
        }
    }

    /// Next line without its terminator; `None` at end of input.
    /// A line missing its final newline is an error (the format requires
    /// every line to be newline-terminated).
    fn next_line(&mut self) -> Result<Option<(usize, &'a [u8])>, ParseError> {
        if self.rest.is_empty() {
            return Ok(None);
        }
        self.line += 1;
        match self.rest.iter().position(|&b| b == b'\n') {
            Some(pos) => {
                let content = &self.rest[..pos];
                self.rest = &self.rest[pos + 1..];
                Ok(Some((self.line, content)))
            }
            None => Err(ParseError::MissingNewline { line: self.line }),
        }
    }
}

/// A strictly increasing, nonempty list of allowed pairwise distances.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceSet {
    distances: Vec<usize>,
}

impl DistanceSet {
    pub fn new(distances: Vec<usize>) -> Result<Self, Error> {
        if distances.is_empty() {
            return Err(Error::invalid("distance set must be nonempty"));
        }
        if distances[0] == 0 {
            return Err(Error::invalid("distances must be at least 1"));
        }
        for pair in distances.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::invalid(format!(
                    "distances must be strictly increasing: {} then {}",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(DistanceSet { distances })
    }

    pub fn distances(&self) -> &[usize] {
        &self.distances
    }

    /// Number of distances, written `s` throughout.
    pub fn s(&self) -> usize {
        self.distances.len()
    }

    pub fn min_distance(&self) -> usize {
        self.distances[0]
    }

    pub fn max_distance(&self) -> usize {
        *self.distances.last().unwrap()
    }

    pub fn contains(&self, d: usize) -> bool {
        self.distances.binary_search(&d).is_ok()
    }

    pub fn is_subset_of(&self, other: &DistanceSet) -> bool {
        self.distances.iter().all(|&d| other.contains(d))
    }

    pub fn sum(&self) -> usize {
        self.distances.iter().sum()
    }
}

impl fmt::Display for DistanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.distances.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for DistanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DistanceSet{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn distance_identity_and_complement() {
        assert_eq!(w("000000").distance(&w("000000")).unwrap(), 0);
        assert_eq!(w("110000").distance(&w("011000")).unwrap(), 2);
        let u = w("1011010");
        assert_eq!(u.distance(&u.complement()).unwrap(), 7);
    }

    #[test]
    fn distance_length_mismatch() {
        assert_eq!(
            w("00").distance(&w("000")),
            Err(Error::LengthMismatch(2, 3))
        );
    }

    #[test]
    fn weight_examples() {
        assert_eq!(w("000000").weight(), 0);
        assert_eq!(w("110100").weight(), 3);
        assert_eq!(w("11111111").weight(), 8);
        // weight equals distance to the zero word
        let u = w("1101001");
        assert_eq!(u.weight(), u.distance(&Word::zero(7)).unwrap());
    }

    #[test]
    fn words_longer_than_one_block() {
        let n = 100;
        let mut u = Word::zero(n);
        u.set(0, true);
        u.set(63, true);
        u.set(64, true);
        u.set(99, true);
        assert_eq!(u.weight(), 4);
        assert_eq!(u.support(), vec![0, 63, 64, 99]);
        let v = u.complement();
        assert_eq!(v.weight(), 96);
        assert_eq!(u.distance(&v).unwrap(), 100);
        let round: Word = u.to_string().parse().unwrap();
        assert_eq!(round, u);
    }

    #[test]
    fn sixty_four_bit_words() {
        let u = Word::from_support(64, &[0, 1, 62, 63]).unwrap();
        assert_eq!(u.weight(), 4);
        assert_eq!(u.complement().weight(), 60);
        assert_eq!(u.to_string().len(), 64);
    }

    #[test]
    fn lexicographic_order() {
        assert!(w("01") < w("10"));
        assert!(w("011") < w("101"));
        assert!(w("000") < w("001"));
        let mut v = [w("10"), w("01"), w("11"), w("00")];
        v.sort();
        let strings: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(strings, ["00", "01", "10", "11"]);
    }

    #[test]
    fn distance_set_of_equilateral_triple() {
        let code = Code::new(3, vec![w("000"), w("110"), w("011")]).unwrap();
        assert_eq!(code.distance_set().unwrap().distances(), &[2]);
    }

    #[test]
    fn distance_set_of_weight_two_plus_zero() {
        // all weight-2 words of length 6 plus the zero word
        let mut words = vec![Word::zero(6)];
        for i in 0..6 {
            for j in i + 1..6 {
                words.push(Word::from_support(6, &[i, j]).unwrap());
            }
        }
        let code = Code::new(6, words).unwrap();
        assert_eq!(code.len(), 16);
        assert_eq!(code.distance_set().unwrap().distances(), &[2, 4]);
    }

    #[test]
    fn distance_set_needs_two_words() {
        let code = Code::new(3, vec![w("000")]).unwrap();
        assert_eq!(code.distance_set(), Err(Error::EmptyDistanceSet));
    }

    #[test]
    fn parse_basic() {
        let code = Code::parse(b"2 2\n01\n10\n").unwrap();
        assert_eq!(code.n(), 2);
        assert_eq!(code.len(), 2);
        assert!(code.contains(&w("01")));
        assert!(code.contains(&w("10")));
    }

    #[test]
    fn parse_comments_before_header() {
        let code = Code::parse(b"# a comment\n# another\n2 1\n11\n").unwrap();
        assert_eq!(code.len(), 1);
    }

    #[test]
    fn parse_duplicate_word() {
        assert_eq!(
            Code::parse(b"2 2\n01\n01\n"),
            Err(ParseError::DuplicateWord {
                line: 3,
                word: "01".into()
            })
        );
    }

    #[test]
    fn parse_wrong_line_length() {
        assert_eq!(
            Code::parse(b"3 1\n01\n"),
            Err(ParseError::WrongLineLength {
                line: 2,
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn parse_invalid_character() {
        assert_eq!(
            Code::parse(b"2 1\n0x\n"),
            Err(ParseError::InvalidCharacter {
                line: 2,
                found: 'x'
            })
        );
    }

    #[test]
    fn parse_malformed_headers() {
        for bad in [
            &b"2\n"[..],
            b"2  2\n",
            b"a 2\n",
            b"2 2 2\n",
            b"0 0\n",
            b"",
            b"# only a comment\n",
        ] {
            match Code::parse(bad) {
                Err(ParseError::MalformedHeader { .. }) => {}
                other => panic!("expected malformed header for {bad:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn parse_count_mismatch() {
        assert!(matches!(
            Code::parse(b"2 3\n01\n10\n"),
            Err(ParseError::CountMismatch {
                declared: 3,
                found: 2,
                ..
            })
        ));
        // trailing content counts as an extra word line
        assert!(matches!(
            Code::parse(b"2 1\n01\n10\n"),
            Err(ParseError::CountMismatch { declared: 1, .. })
        ));
    }

    #[test]
    fn parse_requires_final_newline() {
        assert_eq!(
            Code::parse(b"2 1\n01"),
            Err(ParseError::MissingNewline { line: 2 })
        );
    }

    #[test]
    fn serialize_lexicographic() {
        let code = Code::new(2, vec![w("10"), w("01")]).unwrap();
        assert_eq!(code.serialize(), "2 2\n01\n10\n");
    }

    #[test]
    fn serialize_empty_code() {
        let code = Code::new(5, vec![]).unwrap();
        assert_eq!(code.serialize(), "5 0\n");
        let back = Code::parse(code.serialize().as_bytes()).unwrap();
        assert_eq!(back, code);
    }

    #[test]
    fn distance_set_validation() {
        assert!(DistanceSet::new(vec![2, 4]).is_ok());
        assert!(DistanceSet::new(vec![]).is_err());
        assert!(DistanceSet::new(vec![0, 2]).is_err());
        assert!(DistanceSet::new(vec![4, 2]).is_err());
        assert!(DistanceSet::new(vec![2, 2]).is_err());
    }
}
