//! The duplication construction `y(x) = u_0 u_0 u_1 u_1 u_2 u_2 ...`.
//!
//! Block `u_k` is the run of base bits at 1-based positions
//! `2^(2^k) - 1 ..= 2^(2^(k+1)) - 2`, so `u_0 = x_1 x_2`,
//! `u_1 = x_3 ... x_14`, `u_2 = x_15 ... x_254`, with lengths
//! 2, 12, 240, 65280, ...

use crate::codes::BitString;
use crate::error::{invalid, Result};

/// Block table of the construction.
#[derive(Debug, Clone, Copy, Default)]
pub struct DuplicationLayout;

impl DuplicationLayout {
    /// 1-based inclusive base positions of `u_k`, or `None` once they
    /// overflow 128-bit arithmetic.
    pub fn block_span(k: u32) -> Option<(u128, u128)> {
        let lo_exp = 1u32.checked_shl(k)?;
        let hi_exp = 1u32.checked_shl(k + 1)?;
        let lo = 1u128.checked_shl(lo_exp)?;
        let hi = 1u128.checked_shl(hi_exp)?;
        Some((lo - 1, hi - 2))
    }

    /// `|u_k|`.
    pub fn block_len(k: u32) -> Option<u128> {
        Self::block_span(k).map(|(lo, hi)| hi - lo + 1)
    }
}

/// Minimal base length defining the first `n` output bits.
pub fn required_base_length(n: usize) -> usize {
    let n = n as u128;
    let mut produced = 0u128;
    for k in 0.. {
        if n <= produced {
            // Only reached for n == 0; later blocks return below.
            return 0;
        }
        let (lo, hi) = DuplicationLayout::block_span(k)
            .expect("any usize output ends within the representable blocks");
        let start = lo - 1;
        let len = hi - lo + 1;
        if n <= produced + len {
            return (start + (n - produced)) as usize;
        }
        if n <= produced + 2 * len {
            return (start + len) as usize;
        }
        produced += 2 * len;
    }
    unreachable!()
}

/// First `n` bits of `y(base)`.
pub fn duplication_construction(base: &BitString, n: usize) -> Result<BitString> {
    let need = required_base_length(n);
    if base.len() < need {
        return Err(invalid(format!(
            "{n} output bits need {need} base bits, got {}",
            base.len()
        )));
    }
    let x = base.as_slice();
    let mut out = BitString::with_capacity(n);
    let mut k = 0;
    while out.len() < n {
        let (lo, hi) = DuplicationLayout::block_span(k).expect("bounded by n");
        let block = &x[(lo - 1) as usize..(hi as usize).min(need)];
        for _ in 0..2 {
            let take = block.len().min(n - out.len());
            out.extend_from_bits(&block[..take]);
        }
        k += 1;
    }
    Ok(out)
}
