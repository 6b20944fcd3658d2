//! Bit-level I/O, the prefix-free integer code `C`, and Kraft utilities.
//!
//! All multi-bit fields are written most-significant-bit first.

mod bits;
mod elias;
pub mod format;

pub use bits::{BitReader, BitString, BitWriter};
pub use elias::{
    decode_integer, encode_integer, integer_code_len, kraft_sum, read_integer, write_integer,
};

/// Output of an encoder: the code bits plus the length of the input they
/// represent (in bits).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub bits: BitString,
    pub source_length: usize,
}

impl Codeword {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// A lossless binary code whose codewords for inputs of any one length
/// form a prefix-free set, so each length class obeys the Kraft inequality.
pub trait PrefixCode: Send + Sync {
    /// Short stable identifier, used in reports.
    fn name(&self) -> &str;

    fn encode(&self, x: &BitString) -> Codeword;

    fn decode(&self, c: &Codeword) -> crate::Result<BitString>;

    /// `|encode(x)|` without building the codeword.
    fn code_length(&self, x: &BitString) -> u64 {
        self.encode(x).len() as u64
    }

    /// `code_length(x|_1^m)` for `m = 0..=n`.
    fn prefix_code_lengths(&self, x: &BitString) -> Vec<u64> {
        (0..=x.len())
            .map(|m| self.code_length(&x.prefix(m)))
            .collect()
    }
}

/// The identity code: every string is its own codeword. Within a length
/// class this is the complete fixed-length code.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityCode;

impl PrefixCode for IdentityCode {
    fn name(&self) -> &str {
        "literal"
    }

    fn encode(&self, x: &BitString) -> Codeword {
        Codeword {
            bits: x.clone(),
            source_length: x.len(),
        }
    }

    fn decode(&self, c: &Codeword) -> crate::Result<BitString> {
        if c.bits.len() != c.source_length {
            return Err(crate::Error::Decode {
                offset: c.bits.len().min(c.source_length),
                reason: "literal codeword length differs from source length".into(),
            });
        }
        Ok(c.bits.clone())
    }

    fn code_length(&self, x: &BitString) -> u64 {
        x.len() as u64
    }

    fn prefix_code_lengths(&self, x: &BitString) -> Vec<u64> {
        (0..=x.len() as u64).collect()
    }
}
