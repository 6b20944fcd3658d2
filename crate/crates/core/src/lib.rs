//! Compression-based statistical tests for random number generators.
//!
//! * [`codes`]: bit strings, bit I/O, the Elias delta integer code, Kraft sums.
//! * [`lz`]: greedy LZ77 factorization and its prefix-free encodings.
//! * [`stats`]: the compression test, the prefix-scanning complexity test,
//!   battery p-values and consistency scans.
//! * [`sources`]: seeded stationary, non-stationary and constructed sources.
//! * [`oracle`]: brute-force references for the test suite.

pub mod codes;
pub mod error;
pub mod lz;
pub mod oracle;
pub mod sources;
pub mod stats;

pub use codes::{BitString, Codeword, PrefixCode};
pub use error::{Error, Result};
