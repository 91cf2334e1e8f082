use thiserror::Error;

/// Errors produced while parsing the code file format.
///
/// Each variant names the offending (1-based) line so a user can fix the
/// file by hand.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header, expected \"n M\" with two base-10 integers")]
    MalformedHeader { line: usize },
    #[error("line {line}: expected {expected} characters, found {found}")]
    WrongLineLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: invalid character {found:?}, words consist of '0' and '1' only")]
    InvalidCharacter { line: usize, found: char },
    #[error("line {line}: duplicate word {word}")]
    DuplicateWord { line: usize, word: String },
    #[error("line {line}: header declared {declared} words, found {found}")]
    CountMismatch {
        line: usize,
        declared: usize,
        found: usize,
    },
    #[error("line {line}: missing newline terminator")]
    MissingNewline { line: usize },
}

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("distance set of a code with fewer than two words is undefined")]
    EmptyDistanceSet,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("singular matrix: no nonzero pivot in column {column}")]
    SingularMatrix { column: usize },
    #[error("resource limit exceeded: {what} requires {required}, limit is {limit}")]
    ResourceLimit {
        what: String,
        required: String,
        limit: String,
    },
    #[error("pair at distance {distance} outside the distance set: {u} / {v}")]
    DistanceOutsideSet {
        u: String,
        v: String,
        distance: usize,
    },
}

impl Error {
    pub fn invalid<S: Into<String>>(msg: S) -> Self {
        Error::InvalidInput(msg.into())
    }
}
