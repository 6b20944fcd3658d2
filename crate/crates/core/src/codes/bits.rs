//! Bit strings and MSB-first bit I/O.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// A finite binary word `x = x_1 x_2 ... x_n`.
///
/// Positions are 1-based at the API boundary: [`BitString::bit`] and
/// [`BitString::prefix`] follow the `x_i` and `x|_1^m` conventions. Slice
/// access through [`BitString::as_slice`] is ordinary 0-based Rust indexing.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self {
            bits: Vec::with_capacity(n),
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            bits: vec![false; n],
        }
    }

    /// Number of bits `n`.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// The bit `x_i`, 1-based. Returns `None` outside `1..=n`.
    pub fn bit(&self, i: usize) -> Option<bool> {
        i.checked_sub(1).and_then(|k| self.bits.get(k).copied())
    }

    /// The prefix `x|_1^m`.
    ///
    /// # Panics
    /// If `m > self.len()`.
    pub fn prefix(&self, m: usize) -> BitString {
        BitString {
            bits: self.bits[..m].to_vec(),
        }
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn extend_from_bits(&mut self, other: &[bool]) {
        self.bits.extend_from_slice(other);
    }

    pub fn truncate(&mut self, n: usize) {
        self.bits.truncate(n);
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    /// `true` if `self` is a (not necessarily proper) prefix of `other`.
    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        other.bits.starts_with(&self.bits)
    }

    /// The `n`-bit big-endian binary expansion of `value`, for
    /// enumerating `{0,1}^n`. Requires `n <= 64`.
    pub fn from_index(value: u64, n: usize) -> Self {
        assert!(n <= 64, "enumeration width {n} exceeds 64 bits");
        let bits = (0..n).map(|k| (value >> (n - 1 - k)) & 1 == 1).collect();
        Self { bits }
    }

    /// Unpacks bytes MSB-first, keeping the first `n_bits` bits.
    pub fn from_bytes(bytes: &[u8], n_bits: usize) -> Result<Self> {
        if n_bits > bytes.len() * 8 {
            return Err(invalid(format!(
                "{n_bits} bits requested from {} bytes",
                bytes.len()
            )));
        }
        let bits = (0..n_bits)
            .map(|k| (bytes[k / 8] >> (7 - k % 8)) & 1 == 1)
            .collect();
        Ok(Self { bits })
    }

    /// Packs MSB-first; the final byte is zero-padded.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.bits.len().div_ceil(8)];
        for (k, &b) in self.bits.iter().enumerate() {
            if b {
                out[k / 8] |= 0x80 >> (k % 8);
            }
        }
        out
    }

    /// Parses ASCII `'0'`/`'1'`, ignoring whitespace.
    pub fn from_ascii(text: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(text.len());
        for (k, c) in text.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                c => return Err(invalid(format!("unexpected character {c:?} at {k}"))),
            }
        }
        Ok(Self { bits })
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        Self { bits }
    }
}

impl From<&[bool]> for BitString {
    fn from(bits: &[bool]) -> Self {
        Self {
            bits: bits.to_vec(),
        }
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self {
            bits: iter.into_iter().collect(),
        }
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_ascii(s)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits.len() <= 64 {
            write!(f, "BitString(\"{self}\")")
        } else {
            write!(f, "BitString(len={})", self.bits.len())
        }
    }
}

/// Appends bits to a [`BitString`], MSB-first for multi-bit values.
#[derive(Debug, Default)]
pub struct BitWriter {
    out: BitString,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn write_bit(&mut self, bit: bool) {
        self.out.push(bit);
    }

    /// Writes the low `width` bits of `value`, most significant first.
    pub fn write_bits(&mut self, value: u64, width: u32) {
        debug_assert!(width <= 64);
        for k in (0..width).rev() {
            self.out.push((value >> k) & 1 == 1);
        }
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn finish(self) -> BitString {
        self.out
    }
}

/// Reads bits from a borrowed slice, tracking the absolute offset for
/// error reporting.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bits: &'a [bool]) -> Self {
        Self { bits, pos: 0 }
    }

    pub fn at(bits: &'a [bool], pos: usize) -> Self {
        Self { bits, pos }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bits.len().saturating_sub(self.pos)
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        let b = self.bits.get(self.pos).copied().ok_or(Error::Decode {
            offset: self.pos,
            reason: "unexpected end of stream".into(),
        })?;
        self.pos += 1;
        Ok(b)
    }

    pub fn read_bits(&mut self, width: u32) -> Result<u64> {
        if width > 64 {
            return Err(Error::Decode {
                offset: self.pos,
                reason: format!("field width {width} exceeds 64 bits"),
            });
        }
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | u64::from(self.read_bit()?);
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_based_access() {
        let x: BitString = "0110".parse().unwrap();
        assert_eq!(x.bit(0), None);
        assert_eq!(x.bit(1), Some(false));
        assert_eq!(x.bit(2), Some(true));
        assert_eq!(x.bit(4), Some(false));
        assert_eq!(x.bit(5), None);
        assert_eq!(x.prefix(2).to_string(), "01");
    }

    #[test]
    fn byte_packing_is_msb_first() {
        let x: BitString = "1000000001".parse().unwrap();
        assert_eq!(x.to_bytes(), vec![0x80, 0x40]);
        assert_eq!(BitString::from_bytes(&[0x80, 0x40], 10).unwrap(), x);
        assert!(BitString::from_bytes(&[0x80], 9).is_err());
    }

    #[test]
    fn ascii_ignores_whitespace() {
        let x = BitString::from_ascii(" 01\n1 0\t").unwrap();
        assert_eq!(x.to_string(), "0110");
        assert!(BitString::from_ascii("012").is_err());
    }

    #[test]
    fn from_index_enumerates_big_endian() {
        assert_eq!(BitString::from_index(5, 4).to_string(), "0101");
        assert_eq!(BitString::from_index(0, 0).len(), 0);
    }

    #[test]
    fn reader_reports_offset_on_truncation() {
        let bits = [true, false];
        let mut r = BitReader::new(&bits);
        assert_eq!(r.read_bits(2).unwrap(), 2);
        match r.read_bit() {
            Err(Error::Decode { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected decode error, got {other:?}"),
        }
    }
}
