//! Exact machinery for binary codes with few distances: upper bounds on
//! the maximum size of a code with a prescribed distance set, the
//! polynomial method behind them made executable, extremal constructions,
//! and exhaustive search for exact values at small parameters.
//!
//! All arithmetic on the bound paths is exact (big integers and
//! rationals); nothing sign-critical ever touches floating point.

pub mod bounds;
pub mod code;
pub mod combinatorics;
pub mod constructions;
pub mod error;
pub mod krawtchouk;
pub mod polymethod;
pub mod search;

pub use code::{Code, DistanceSet, Word};
pub use error::{Error, ParseError};
