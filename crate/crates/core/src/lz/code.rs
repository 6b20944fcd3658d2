//! Bit-level encodings of an LZ77 parse.
//!
//! Let `s` be the number of bits already produced when a pair is written
//! and `w(s) = ceil(log2(s + 1))` the width of `s` in binary.
//!
//! [`PairCoding::Adaptive`] (the default) writes the position `p` in
//! `0..=s` as a fixed `w(s)`-bit field, then either the raw literal bit or
//! `C(zigzag(l - w(s)) + 1)`. Greedy match lengths concentrate around
//! `log2 s`, so offsetting by `w(s)` keeps the length field short.
//!
//! [`PairCoding::Elias`] writes `C(p + 1)` followed by the raw bit or
//! `C(l)`.
//!
//! Neither stream carries the input length; a decoder that knows `n` stops
//! once `n` bits are produced. The codeword set of each length class is
//! therefore prefix-free. [`Lz77Code::encode_framed`] prepends `C(n + 1)`
//! for a code that is prefix-free across all lengths.

use super::parse::{parse, Lz77Pair, Lz77Parse, Matcher};
use crate::codes::{
    integer_code_len, read_integer, write_integer, BitReader, BitString, BitWriter, Codeword,
    PrefixCode,
};
use crate::error::{Error, Result};

/// How the integers of each pair are written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum PairCoding {
    #[default]
    Adaptive,
    Elias,
}

/// Bits needed for any value in `0..=s`.
fn width(s: usize) -> u32 {
    usize::BITS - s.leading_zeros()
}

fn zigzag(d: i64) -> u64 {
    if d >= 0 {
        2 * d as u64
    } else {
        (-2 * d - 1) as u64
    }
}

fn unzigzag(z: u64) -> i64 {
    if z.is_multiple_of(2) {
        (z / 2) as i64
    } else {
        -(z.div_ceil(2) as i64)
    }
}

impl PairCoding {
    fn position_cost(self, s: usize, position: usize) -> u64 {
        match self {
            PairCoding::Adaptive => u64::from(width(s)),
            PairCoding::Elias => u64::from(integer_code_len(position as u64 + 1)),
        }
    }

    fn length_cost(self, s: usize, length: usize) -> u64 {
        let m = match self {
            PairCoding::Adaptive => zigzag(length as i64 - i64::from(width(s))) + 1,
            PairCoding::Elias => length as u64,
        };
        u64::from(integer_code_len(m))
    }

    /// Bits used by `pair` when written after `s` produced bits.
    pub fn pair_cost(self, s: usize, pair: &Lz77Pair) -> u64 {
        match *pair {
            Lz77Pair::Literal(_) => self.position_cost(s, 0) + 1,
            Lz77Pair::Copy { position, length } => {
                self.position_cost(s, position) + self.length_cost(s, length)
            }
        }
    }

    fn write_pair(self, w: &mut BitWriter, s: usize, pair: &Lz77Pair) {
        let p = pair.position();
        match self {
            PairCoding::Adaptive => w.write_bits(p as u64, width(s)),
            PairCoding::Elias => write_integer(w, p as u64 + 1).expect("p + 1 >= 1"),
        }
        match *pair {
            Lz77Pair::Literal(b) => w.write_bit(b),
            Lz77Pair::Copy { length, .. } => {
                let m = match self {
                    PairCoding::Adaptive => zigzag(length as i64 - i64::from(width(s))) + 1,
                    PairCoding::Elias => length as u64,
                };
                write_integer(w, m).expect("length field >= 1");
            }
        }
    }

    fn read_pair(self, r: &mut BitReader<'_>, s: usize) -> Result<Lz77Pair> {
        let at = r.position();
        let p = match self {
            PairCoding::Adaptive => r.read_bits(width(s))?,
            PairCoding::Elias => read_integer(r)? - 1,
        };
        if p as usize > s {
            return Err(Error::Decode {
                offset: at,
                reason: format!("position {p} beyond the {s} bits produced so far"),
            });
        }
        if p == 0 {
            return Ok(Lz77Pair::Literal(r.read_bit()?));
        }
        let at = r.position();
        let m = read_integer(r)?;
        let length = match self {
            PairCoding::Adaptive => i64::from(width(s)) + unzigzag(m - 1),
            PairCoding::Elias => m as i64,
        };
        if length < 1 {
            return Err(Error::Decode {
                offset: at,
                reason: format!("copy length {length} is not positive"),
            });
        }
        Ok(Lz77Pair::Copy {
            position: p as usize,
            length: length as usize,
        })
    }
}

/// The LZ77 code `phi` used by the compression test.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Lz77Code {
    pub coding: PairCoding,
}

impl Lz77Code {
    pub fn new(coding: PairCoding) -> Self {
        Self { coding }
    }

    /// Writes an existing parse.
    pub fn encode_parse(&self, parse: &Lz77Parse) -> Codeword {
        let mut w = BitWriter::new();
        let mut s = 0;
        for pair in &parse.pairs {
            self.coding.write_pair(&mut w, s, pair);
            s += pair.span();
        }
        Codeword {
            bits: w.finish(),
            source_length: parse.total_length,
        }
    }

    /// Reads pairs until `n` bits are represented.
    pub fn decode_parse(&self, bits: &BitString, n: usize) -> Result<Lz77Parse> {
        let mut r = BitReader::new(bits.as_slice());
        let parse = self.read_pairs(&mut r, n)?;
        if r.remaining() > 0 {
            return Err(Error::Decode {
                offset: r.position(),
                reason: format!("{} trailing bits after the last pair", r.remaining()),
            });
        }
        Ok(parse)
    }

    fn read_pairs(&self, r: &mut BitReader<'_>, n: usize) -> Result<Lz77Parse> {
        let mut pairs = Vec::new();
        let mut s = 0;
        while s < n {
            let at = r.position();
            let pair = self.coding.read_pair(r, s)?;
            if s + pair.span() > n {
                return Err(Error::Decode {
                    offset: at,
                    reason: format!("pair overruns the declared {n} bits"),
                });
            }
            s += pair.span();
            pairs.push(pair);
        }
        Ok(Lz77Parse {
            pairs,
            total_length: n,
        })
    }

    /// `C(n + 1)` followed by `encode(x)`; prefix-free over all of `{0,1}*`.
    pub fn encode_framed(&self, x: &BitString) -> BitString {
        let mut w = BitWriter::new();
        write_integer(&mut w, x.len() as u64 + 1).expect("n + 1 >= 1");
        let mut bits = w.finish();
        bits.extend_from_bits(self.encode(x).bits.as_slice());
        bits
    }

    /// Inverse of [`Lz77Code::encode_framed`]; returns the string and the
    /// number of bits consumed from `stream`.
    pub fn decode_framed(&self, stream: &BitString) -> Result<(BitString, usize)> {
        let mut r = BitReader::new(stream.as_slice());
        let n = read_integer(&mut r)? - 1;
        let n = usize::try_from(n).map_err(|_| Error::Decode {
            offset: 0,
            reason: "declared length does not fit in memory".into(),
        })?;
        let parse = self.read_pairs(&mut r, n)?;
        Ok((parse.expand(), r.position()))
    }
}

impl PrefixCode for Lz77Code {
    fn name(&self) -> &str {
        match self.coding {
            PairCoding::Adaptive => "lz77",
            PairCoding::Elias => "lz77-elias",
        }
    }

    fn encode(&self, x: &BitString) -> Codeword {
        self.encode_parse(&parse(x))
    }

    fn decode(&self, c: &Codeword) -> Result<BitString> {
        Ok(self.decode_parse(&c.bits, c.source_length)?.expand())
    }

    fn code_length(&self, x: &BitString) -> u64 {
        let bits = x.as_slice();
        let matcher = Matcher::new(bits);
        let mut total = 0;
        let mut s = 0;
        while s < bits.len() {
            let len = matcher.longest_previous(s);
            total += self.phrase_cost(&matcher, bits, s, len);
            s += len.max(1);
        }
        total
    }

    /// One parse of `x` serves every prefix: the greedy parse of `x|_1^m`
    /// keeps every factor of `x` that ends by `m` and truncates the factor
    /// straddling `m`, whose match length is then `m - start`.
    fn prefix_code_lengths(&self, x: &BitString) -> Vec<u64> {
        let bits = x.as_slice();
        let matcher = Matcher::new(bits);
        let mut out = Vec::with_capacity(bits.len() + 1);
        out.push(0);
        let mut done = 0;
        let mut s = 0;
        while s < bits.len() {
            let len = matcher.longest_previous(s);
            for t in 1..len {
                out.push(done + self.phrase_cost(&matcher, bits, s, t));
            }
            done += self.phrase_cost(&matcher, bits, s, len);
            out.push(done);
            s += len.max(1);
        }
        out
    }
}

impl Lz77Code {
    /// Cost of the factor at `s` with match length `len` (0 = literal).
    fn phrase_cost(&self, matcher: &Matcher<'_>, bits: &[bool], s: usize, len: usize) -> u64 {
        let pair = if len == 0 {
            Lz77Pair::Literal(bits[s])
        } else {
            let position = match self.coding {
                // The position field width does not depend on the value.
                PairCoding::Adaptive => 1,
                PairCoding::Elias => matcher.leftmost_source(s, len) + 1,
            };
            Lz77Pair::Copy {
                position,
                length: len,
            }
        };
        self.coding.pair_cost(s, &pair)
    }
}

/// Encodes `x` with the default LZ77 code.
pub fn encode(x: &BitString) -> Codeword {
    Lz77Code::default().encode(x)
}

/// Decodes a codeword produced by [`encode`].
pub fn decode(c: &Codeword) -> Result<BitString> {
    Lz77Code::default().decode(c)
}

/// `|encode(x)|` computed from the parse alone.
pub fn code_length(x: &BitString) -> u64 {
    Lz77Code::default().code_length(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BOTH: [PairCoding; 2] = [PairCoding::Adaptive, PairCoding::Elias];

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn zigzag_roundtrip() {
        for d in -50..50 {
            assert_eq!(unzigzag(zigzag(d)), d);
        }
        assert_eq!(zigzag(0), 0);
        assert_eq!(zigzag(-1), 1);
        assert_eq!(zigzag(1), 2);
    }

    #[test]
    fn single_literal_lengths() {
        // First pair: no position bits under the adaptive coding.
        assert_eq!(code_length(&bs("0")), 1);
        assert_eq!(encode(&bs("1")).bits.to_string(), "1");
        let elias = Lz77Code::new(PairCoding::Elias);
        assert_eq!(
            elias.code_length(&bs("0")),
            u64::from(integer_code_len(1)) + 1
        );
    }

    #[test]
    fn empty_input_has_empty_code() {
        for coding in BOTH {
            let code = Lz77Code::new(coding);
            let cw = code.encode(&BitString::new());
            assert!(cw.is_empty());
            assert_eq!(code.decode(&cw).unwrap(), BitString::new());
            assert_eq!(code.code_length(&BitString::new()), 0);
        }
    }

    #[test]
    fn known_codeword() {
        // "0000" = (0,'0') (1,3). Adaptive: [] 0 | 1 C(zz(3-1)+1)=C(5)="01101".
        assert_eq!(encode(&bs("0000")).bits.to_string(), "0101101");
        // Elias: C(1) 0 | C(2) C(3) = "1" "0" "0100" "0101".
        let elias = Lz77Code::new(PairCoding::Elias);
        assert_eq!(elias.encode(&bs("0000")).bits.to_string(), "1001000101");
    }

    #[test]
    fn malformed_streams_are_rejected() {
        let code = Lz77Code::default();
        // Position 3 when only 1 bit exists: width(1) = 1 so it cannot even
        // be written; use trailing garbage and truncation instead.
        let mut cw = encode(&bs("0110"));
        cw.bits.push(true);
        assert!(matches!(code.decode(&cw), Err(Error::Decode { .. })));
        let mut cw = encode(&bs("0110"));
        let n = cw.bits.len();
        cw.bits.truncate(n - 1);
        assert!(matches!(code.decode(&cw), Err(Error::Decode { .. })));
        // A copy that overruns the declared length.
        let cw = Codeword {
            bits: encode(&bs("0000")).bits,
            source_length: 3,
        };
        assert!(matches!(code.decode(&cw), Err(Error::Decode { .. })));
        // Elias position beyond the produced prefix: C(1) 0 then C(3)=p 2 > s 1.
        let elias = Lz77Code::new(PairCoding::Elias);
        let cw = Codeword {
            bits: bs("10 0101 1"),
            source_length: 2,
        };
        match elias.decode(&cw) {
            Err(Error::Decode { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn framed_roundtrip_consumes_exactly() {
        let code = Lz77Code::default();
        let x = bs("0110100110");
        let mut stream = code.encode_framed(&x);
        let used = stream.len();
        stream.extend_from_bits(&[true, false, true]);
        assert_eq!(code.decode_framed(&stream).unwrap(), (x, used));
    }
}
