//! On-disk bit stream formats.
//!
//! * **bit-file**: an 8-byte little-endian bit count followed by the
//!   payload packed MSB-first, zero-padded to a whole byte.
//! * **raw**: packed bytes with no header; every bit of every byte counts.
//! * **ascii**: the characters `'0'` and `'1'`; whitespace is ignored.

use std::io::{BufRead, BufReader, Read, Write};

use super::BitString;
use crate::error::{invalid, Result};

const HEADER_LEN: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Bitfile,
    Raw,
    Ascii,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Bitfile => "bitfile",
            Format::Raw => "raw",
            Format::Ascii => "ascii",
        }
    }
}

/// Writes `x` in `format`.
pub fn write_bits<W: Write>(w: W, x: &BitString, format: Format) -> Result<()> {
    match format {
        Format::Bitfile => write_bitfile(w, x),
        Format::Raw => write_raw(w, x),
        Format::Ascii => write_ascii(w, x),
    }
}

/// Reads a bit stream in bounded pieces, so inputs larger than memory can
/// be processed chunk by chunk.
pub struct BitStreamReader<R> {
    inner: BufReader<R>,
    format: Format,
    /// Bits still owed by a bit-file payload; `None` before the header.
    declared: Option<u64>,
    /// Bits of the last byte that did not fit in the previous chunk.
    carry: Vec<bool>,
    /// Bytes consumed, for error messages.
    offset: u64,
}

impl<R: Read> BitStreamReader<R> {
    pub fn new(inner: R, format: Format) -> Self {
        Self {
            inner: BufReader::new(inner),
            format,
            declared: None,
            carry: Vec::new(),
            offset: 0,
        }
    }

    fn next_byte(&mut self) -> Result<Option<u8>> {
        let buf = self.inner.fill_buf()?;
        let Some(&b) = buf.first() else {
            return Ok(None);
        };
        self.inner.consume(1);
        self.offset += 1;
        Ok(Some(b))
    }

    fn read_header(&mut self) -> Result<u64> {
        let mut head = [0u8; HEADER_LEN];
        for (i, slot) in head.iter_mut().enumerate() {
            *slot = self.next_byte()?.ok_or_else(|| {
                invalid(format!(
                    "bit-file of {i} bytes is shorter than its {HEADER_LEN}-byte header"
                ))
            })?;
        }
        Ok(u64::from_le_bytes(head))
    }

    /// Up to `max` further bits; fewer only at the end of the stream.
    pub fn read_chunk(&mut self, max: usize) -> Result<BitString> {
        let mut out = BitString::with_capacity(max.min(1 << 24));
        let take = self.carry.len().min(max);
        out.extend_from_bits(&self.carry[..take]);
        self.carry.drain(..take);
        while out.len() < max {
            let bits: Vec<bool> = match self.format {
                Format::Ascii => match self.next_byte()? {
                    None => break,
                    Some(b'0') => vec![false],
                    Some(b'1') => vec![true],
                    Some(b) if b.is_ascii_whitespace() => continue,
                    Some(b) => {
                        return Err(invalid(format!(
                            "ascii input: unexpected byte {b:#04x} at offset {}",
                            self.offset - 1
                        )))
                    }
                },
                Format::Raw => match self.next_byte()? {
                    None => break,
                    Some(b) => byte_bits(b, 8),
                },
                Format::Bitfile => {
                    let left = match self.declared {
                        Some(n) => n,
                        None => self.read_header()?,
                    };
                    if left == 0 {
                        self.declared = Some(0);
                        if self.next_byte()?.is_some() {
                            return Err(invalid("bit-file carries bytes past its declared length"));
                        }
                        break;
                    }
                    let b = self.next_byte()?.ok_or_else(|| {
                        invalid(format!("bit-file payload ends {left} bits early"))
                    })?;
                    let k = left.min(8);
                    self.declared = Some(left - k);
                    byte_bits(b, k as usize)
                }
            };
            let room = max - out.len();
            if bits.len() > room {
                out.extend_from_bits(&bits[..room]);
                self.carry.extend_from_slice(&bits[room..]);
            } else {
                out.extend_from_bits(&bits);
            }
        }
        Ok(out)
    }
}

/// The first `k` bits of `b`, MSB first.
fn byte_bits(b: u8, k: usize) -> Vec<bool> {
    (0..k).map(|i| b & (0x80 >> i) != 0).collect()
}

pub fn write_bitfile<W: Write>(mut w: W, x: &BitString) -> Result<()> {
    w.write_all(&(x.len() as u64).to_le_bytes())?;
    w.write_all(&x.to_bytes())?;
    Ok(())
}

pub fn read_bitfile<R: Read>(mut r: R) -> Result<BitString> {
    let mut data = Vec::new();
    r.read_to_end(&mut data)?;
    parse_bitfile(&data)
}

pub fn parse_bitfile(data: &[u8]) -> Result<BitString> {
    if data.len() < HEADER_LEN {
        return Err(invalid(format!(
            "bit-file of {} bytes is shorter than its {HEADER_LEN}-byte header",
            data.len()
        )));
    }
    let (head, payload) = data.split_at(HEADER_LEN);
    let n = u64::from_le_bytes(head.try_into().expect("8-byte header"));
    let n = usize::try_from(n).map_err(|_| invalid("bit count does not fit in memory"))?;
    if payload.len() != n.div_ceil(8) {
        return Err(invalid(format!(
            "bit-file declares {n} bits but carries {} payload bytes",
            payload.len()
        )));
    }
    BitString::from_bytes(payload, n)
}

pub fn write_raw<W: Write>(mut w: W, x: &BitString) -> Result<()> {
    if !x.len().is_multiple_of(8) {
        return Err(invalid(format!(
            "raw format needs a whole number of bytes, got {} bits",
            x.len()
        )));
    }
    w.write_all(&x.to_bytes())?;
    Ok(())
}

pub fn parse_raw(data: &[u8]) -> BitString {
    BitString::from_bytes(data, data.len() * 8).expect("length within buffer")
}

pub fn write_ascii<W: Write>(mut w: W, x: &BitString) -> Result<()> {
    writeln!(w, "{x}")?;
    Ok(())
}

pub fn parse_ascii(data: &[u8]) -> Result<BitString> {
    let text = std::str::from_utf8(data).map_err(|e| invalid(format!("ascii input: {e}")))?;
    BitString::from_ascii(text)
}
