//! Seeded bit-sequence generators.
//!
//! Every generator draws from ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded
//! through `SeedableRng::seed_from_u64`, consuming randomness bit by bit in
//! output order. Output is therefore identical across platforms, and
//! `generate(spec, n)` is always a prefix of `generate(spec, m)` for
//! `n <= m`.
//!
//! # Spec strings
//!
//! ```text
//! bernoulli:<p>[:seed=<u64>]
//! markov:<p00>,<p01>,<p10>,<p11>[:seed=<u64>]   rows: previous bit 0 / 1
//! drift:<p0>,<rate>[:seed=<u64>]                p_i = clamp(p0 + rate * i)
//! regime:<len>@<p>[,<len>@<p>...][:seed=<u64>]  segments repeat cyclically
//! dup[:seed=<u64>]                              y(x), x ~ bernoulli:0.5
//! ```
//!
//! The seed defaults to 0.

mod duplication;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub use duplication::{duplication_construction, required_base_length, DuplicationLayout};

use crate::codes::BitString;
use crate::error::{invalid, Error, Result};

/// A run of `len` bits with probability `p` of a one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub len: usize,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SourceKind {
    /// I.i.d. bits with `P(1) = p`.
    Bernoulli { p: f64 },
    /// First-order chain; `transition[a][b] = P(next = b | previous = a)`.
    /// The first bit is drawn from the stationary distribution.
    Markov { transition: [[f64; 2]; 2] },
    /// Independent bits whose bias moves linearly, `p_i = p0 + rate * i`
    /// (0-based `i`), clamped to `[0, 1]`.
    DriftingBias { p0: f64, rate: f64 },
    /// Piecewise-constant bias, cycling through `segments`.
    RegimeSwitch { segments: Vec<Segment> },
    /// The duplication construction over a uniform base stream.
    Duplication,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SourceSpec {
    pub kind: SourceKind,
    pub seed: u64,
}

const ROW_TOLERANCE: f64 = 1e-12;

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(invalid(format!("{name} = {p} is not a probability")))
    }
}

impl SourceSpec {
    pub fn new(kind: SourceKind, seed: u64) -> Result<Self> {
        let spec = Self { kind, seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn bernoulli(p: f64, seed: u64) -> Result<Self> {
        Self::new(SourceKind::Bernoulli { p }, seed)
    }

    pub fn validate(&self) -> Result<()> {
        match &self.kind {
            SourceKind::Bernoulli { p } => check_probability("p", *p),
            SourceKind::Markov { transition } => {
                for (a, row) in transition.iter().enumerate() {
                    for (b, &q) in row.iter().enumerate() {
                        check_probability(&format!("P({b}|{a})"), q)?;
                    }
                    let sum = row[0] + row[1];
                    if (sum - 1.0).abs() > ROW_TOLERANCE {
                        return Err(invalid(format!("markov row {a} sums to {sum}")));
                    }
                }
                Ok(())
            }
            SourceKind::DriftingBias { p0, rate } => {
                check_probability("p0", *p0)?;
                if rate.is_finite() {
                    Ok(())
                } else {
                    Err(invalid(format!("drift rate {rate} is not finite")))
                }
            }
            SourceKind::RegimeSwitch { segments } => {
                if segments.is_empty() {
                    return Err(invalid("regime switch needs at least one segment"));
                }
                for s in segments {
                    if s.len == 0 {
                        return Err(invalid("regime segments must be non-empty"));
                    }
                    check_probability("segment p", s.p)?;
                }
                Ok(())
            }
            SourceKind::Duplication => Ok(()),
        }
    }
}

fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn bernoulli_bits(seed: u64, n: usize, mut p_at: impl FnMut(usize) -> f64) -> BitString {
    let mut r = rng(seed);
    (0..n).map(|i| r.random_bool(p_at(i))).collect()
}

/// The first `n` bits of the source described by `spec`.
pub fn generate(spec: &SourceSpec, n: usize) -> Result<BitString> {
    spec.validate()?;
    Ok(match &spec.kind {
        SourceKind::Bernoulli { p } => bernoulli_bits(spec.seed, n, |_| *p),
        SourceKind::DriftingBias { p0, rate } => {
            bernoulli_bits(spec.seed, n, |i| (p0 + rate * i as f64).clamp(0.0, 1.0))
        }
        SourceKind::RegimeSwitch { segments } => {
            let period: usize = segments.iter().map(|s| s.len).sum();
            let mut ends = Vec::with_capacity(segments.len());
            let mut acc = 0;
            for s in segments {
                acc += s.len;
                ends.push((acc, s.p));
            }
            bernoulli_bits(spec.seed, n, |i| {
                let phase = i % period;
                ends.iter()
                    .find(|(end, _)| phase < *end)
                    .expect("phase < period")
                    .1
            })
        }
        SourceKind::Markov { transition } => {
            let mut r = rng(spec.seed);
            let (to_one, to_zero) = (transition[0][1], transition[1][0]);
            let stationary_one = if to_one + to_zero > 0.0 {
                to_one / (to_one + to_zero)
            } else {
                0.5
            };
            let mut out = BitString::with_capacity(n);
            let mut prev = false;
            for i in 0..n {
                let p = if i == 0 {
                    stationary_one
                } else {
                    transition[usize::from(prev)][1]
                };
                prev = r.random_bool(p);
                out.push(prev);
            }
            out
        }
        SourceKind::Duplication => {
            let base = bernoulli_bits(spec.seed, required_base_length(n), |_| 0.5);
            duplication_construction(&base, n)?
        }
    })
}

fn parse_f64(field: &str, what: &str) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| invalid(format!("cannot read {what} from {field:?}")))
}

fn parse_list(params: Option<&str>, kind: &str, want: usize) -> Result<Vec<f64>> {
    let params = params.ok_or_else(|| invalid(format!("{kind} needs parameters")))?;
    let values = params
        .split(',')
        .map(|f| parse_f64(f, kind))
        .collect::<Result<Vec<_>>>()?;
    if values.len() != want {
        return Err(invalid(format!(
            "{kind} takes {want} parameters, got {}",
            values.len()
        )));
    }
    Ok(values)
}

/// Valid kinds, for diagnostics.
pub const SOURCE_KINDS: &str = "bernoulli, markov, drift, regime, dup";

impl FromStr for SourceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut fields: Vec<&str> = s.split(':').collect();
        let mut seed = 0u64;
        if let Some(last) = fields.last() {
            if let Some(v) = last.strip_prefix("seed=") {
                seed = v.parse().map_err(|_| invalid(format!("bad seed {v:?}")))?;
                fields.pop();
            }
        }
        let (kind, params) = match fields.as_slice() {
            [kind] => (*kind, None),
            [kind, params] => (*kind, Some(*params)),
            _ => {
                return Err(invalid(format!(
                    "cannot parse source {s:?}; kinds: {SOURCE_KINDS}"
                )))
            }
        };
        let kind = match kind {
            "bernoulli" => SourceKind::Bernoulli {
                p: parse_list(params, kind, 1)?[0],
            },
            "markov" => {
                let v = parse_list(params, kind, 4)?;
                SourceKind::Markov {
                    transition: [[v[0], v[1]], [v[2], v[3]]],
                }
            }
            "drift" => {
                let v = parse_list(params, kind, 2)?;
                SourceKind::DriftingBias {
                    p0: v[0],
                    rate: v[1],
                }
            }
            "regime" => {
                let params = params.ok_or_else(|| invalid("regime needs segments"))?;
                let segments = params
                    .split(',')
                    .map(|seg| {
                        let (len, p) = seg
                            .split_once('@')
                            .ok_or_else(|| invalid(format!("segment {seg:?} is not <len>@<p>")))?;
                        Ok(Segment {
                            len: len
                                .trim()
                                .parse()
                                .map_err(|_| invalid(format!("bad segment length {len:?}")))?,
                            p: parse_f64(p, "segment p")?,
                        })
                    })
                    .collect::<Result<_>>()?;
                SourceKind::RegimeSwitch { segments }
            }
            "dup" if params.is_none() => SourceKind::Duplication,
            "dup" => return Err(invalid("dup takes no parameters besides the seed")),
            other => {
                return Err(invalid(format!(
                    "unknown source kind {other:?}; kinds: {SOURCE_KINDS}"
                )))
            }
        };
        SourceSpec::new(kind, seed)
    }
}

impl fmt::Display for SourceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SourceKind::Bernoulli { p } => write!(f, "bernoulli:{p}")?,
            SourceKind::Markov { transition: t } => {
                write!(f, "markov:{},{},{},{}", t[0][0], t[0][1], t[1][0], t[1][1])?
            }
            SourceKind::DriftingBias { p0, rate } => write!(f, "drift:{p0},{rate}")?,
            SourceKind::RegimeSwitch { segments } => {
                f.write_str("regime:")?;
                for (i, s) in segments.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}@{}", s.len, s.p)?;
                }
            }
            SourceKind::Duplication => f.write_str("dup")?,
        }
        write!(f, ":seed={}", self.seed)
    }
}
