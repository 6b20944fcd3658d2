//! LZ77 factorization of binary strings and its prefix-free encoding.
//!
//! The window is unbounded: a copy may start anywhere in the produced
//! prefix and may overlap the bits it is producing. Positions count from
//! the start of the string (1-based), not backwards from the cursor.

mod code;
mod parse;
mod suffix;

pub use code::{code_length, decode, encode, Lz77Code, PairCoding};
pub use parse::{parse, Lz77Pair, Lz77Parse};
