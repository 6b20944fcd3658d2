//! The Elias delta code for positive integers.
//!
//! `C(m)` is written as the Elias gamma code of `L = floor(log2 m) + 1`
//! followed by the `L - 1` bits of `m` below its leading one, so
//!
//! ```text
//! |C(m)| = floor(log2 m) + 2 * floor(log2(floor(log2 m) + 1)) + 1
//! ```
//!
//! which is `log2 m + 2 log2 log2 (m+1) + O(1)`.
//!
//! The code is complete. Integers sharing `floor(log2 L) = k` contribute
//! `2^k` header values times `2^(L-1)` payloads at length
//! `(L - 1) + 2k + 1`, i.e. `2^(-k-1)` in total, so the infinite Kraft sum is
//! `sum_k 2^(-k-1) = 1`. Truncating at `m <= 2^20` leaves a tail of
//! `1 - 0.947265626862645...`.

use super::bits::{BitReader, BitString, BitWriter};
use super::Codeword;
use crate::error::{invalid, Error, Result};

fn floor_log2(m: u64) -> u32 {
    63 - m.leading_zeros()
}

/// `|C(m)|` without materialising the codeword. `m` must be positive.
pub fn integer_code_len(m: u64) -> u32 {
    debug_assert!(m >= 1);
    let n = floor_log2(m);
    n + 2 * floor_log2(u64::from(n) + 1) + 1
}

/// Appends `C(m)` to `w`.
pub fn write_integer(w: &mut BitWriter, m: u64) -> Result<()> {
    if m == 0 {
        return Err(invalid("integer code is defined for m >= 1"));
    }
    let n = floor_log2(m);
    let len = u64::from(n) + 1;
    let k = floor_log2(len);
    w.write_bits(0, k);
    w.write_bits(len, k + 1);
    w.write_bits(m, n);
    Ok(())
}

/// Reads one `C(m)` from `r`.
pub fn read_integer(r: &mut BitReader<'_>) -> Result<u64> {
    let start = r.position();
    let mut k = 0u32;
    while !r.read_bit()? {
        k += 1;
        if k > 6 {
            return Err(Error::Decode {
                offset: start,
                reason: "integer code header longer than any 64-bit value".into(),
            });
        }
    }
    let len = (1u64 << k) | r.read_bits(k)?;
    if len > 64 {
        return Err(Error::Decode {
            offset: start,
            reason: format!("integer code declares {len} payload bits"),
        });
    }
    let n = (len - 1) as u32;
    let low = r.read_bits(n)?;
    Ok((1u64 << n) | low)
}

/// Encodes a positive integer as a stand-alone codeword.
pub fn encode_integer(m: u64) -> Result<Codeword> {
    let mut w = BitWriter::new();
    write_integer(&mut w, m)?;
    let bits = w.finish();
    Ok(Codeword {
        bits,
        source_length: 64 - m.leading_zeros() as usize,
    })
}

/// Decodes one integer starting at bit `offset` (0-based) of `stream`.
/// Returns the value and the number of bits consumed.
pub fn decode_integer(stream: &BitString, offset: usize) -> Result<(u64, usize)> {
    let mut r = BitReader::at(stream.as_slice(), offset);
    let m = read_integer(&mut r)?;
    Ok((m, r.position() - offset))
}

/// `sum_i 2^(-l_i)` accumulated from the longest lengths upwards so that
/// small terms are not absorbed by large ones. Returns 0 for an empty list.
pub fn kraft_sum(lengths: &[u32]) -> f64 {
    let Some(&max) = lengths.iter().max() else {
        return 0.0;
    };
    let mut counts = vec![0u64; max as usize + 1];
    for &l in lengths {
        counts[l as usize] += 1;
    }
    counts
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c > 0)
        .map(|(l, &c)| c as f64 * (-(l as f64)).exp2())
        .sum()
}
