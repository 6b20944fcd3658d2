use super::suffix::MatchIndex;
use crate::codes::BitString;

/// One LZ77 factor.
///
/// `position` is 1-based from the start of the string; `0` marks a literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lz77Pair {
    /// `(0, bit)`: a single terminal.
    Literal(bool),
    /// `(p, l)`: the `length` bits starting at 1-based `position`. The copy
    /// may run past the current end of the output (self-referential).
    Copy { position: usize, length: usize },
}

impl Lz77Pair {
    /// Number of input bits this pair represents.
    pub fn span(&self) -> usize {
        match *self {
            Lz77Pair::Literal(_) => 1,
            Lz77Pair::Copy { length, .. } => length,
        }
    }

    /// The `p` component, with `0` for literals.
    pub fn position(&self) -> usize {
        match *self {
            Lz77Pair::Literal(_) => 0,
            Lz77Pair::Copy { position, .. } => position,
        }
    }
}

/// A greedy LZ77 factorization.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lz77Parse {
    pub pairs: Vec<Lz77Pair>,
    pub total_length: usize,
}

impl Lz77Parse {
    /// Expands the pairs back into the represented string.
    pub fn expand(&self) -> BitString {
        let mut out: Vec<bool> = Vec::with_capacity(self.total_length);
        for pair in &self.pairs {
            match *pair {
                Lz77Pair::Literal(b) => out.push(b),
                Lz77Pair::Copy { position, length } => {
                    let start = position - 1;
                    for k in 0..length {
                        let b = out[start + k];
                        out.push(b);
                    }
                }
            }
        }
        out.into()
    }
}

/// Below this length the quadratic scan beats building a suffix array.
const SMALL_INPUT: usize = 64;

/// Longest-previous-match oracle over one input.
pub(crate) enum Matcher<'a> {
    Scan(&'a [bool]),
    Indexed(MatchIndex),
}

impl<'a> Matcher<'a> {
    pub(crate) fn new(x: &'a [bool]) -> Self {
        if x.len() <= SMALL_INPUT {
            Matcher::Scan(x)
        } else {
            let text: Vec<u8> = x.iter().map(|&b| u8::from(b)).collect();
            Matcher::Indexed(MatchIndex::new(&text))
        }
    }

    /// Longest match length at `i` against any earlier start.
    pub(crate) fn longest_previous(&self, i: usize) -> usize {
        match self {
            Matcher::Scan(x) => (0..i).map(|j| common_run(x, j, i)).max().unwrap_or(0),
            Matcher::Indexed(index) => index.longest_previous(i),
        }
    }

    /// Smallest earlier start matching at least `len` bits at `i`.
    pub(crate) fn leftmost_source(&self, i: usize, len: usize) -> usize {
        match self {
            Matcher::Scan(x) => (0..i)
                .find(|&j| common_run(x, j, i) >= len)
                .expect("len within longest previous match"),
            Matcher::Indexed(index) => index.leftmost_source(i, len),
        }
    }
}

fn common_run(x: &[bool], j: usize, i: usize) -> usize {
    x[i..]
        .iter()
        .zip(&x[j..])
        .take_while(|(a, b)| a == b)
        .count()
}

/// Greedy left-to-right LZ77 factorization with an unbounded window.
///
/// At each step the longest match against any earlier start is taken,
/// ties going to the smallest position; a literal is emitted only when no
/// earlier start matches even one bit.
pub fn parse(x: &BitString) -> Lz77Parse {
    let bits = x.as_slice();
    let matcher = Matcher::new(bits);
    let mut pairs = Vec::new();
    let mut s = 0;
    while s < bits.len() {
        let len = matcher.longest_previous(s);
        pairs.push(if len == 0 {
            Lz77Pair::Literal(bits[s])
        } else {
            Lz77Pair::Copy {
                position: matcher.leftmost_source(s, len) + 1,
                length: len,
            }
        });
        s += len.max(1);
    }
    Lz77Parse {
        pairs,
        total_length: bits.len(),
    }
}
