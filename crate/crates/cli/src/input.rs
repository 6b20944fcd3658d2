//! Where the bits under test come from.

use std::fs::File;
use std::io::{self, Read};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use rngcal::codes::format::{BitStreamReader, Format};
use rngcal::codes::BitString;
use rngcal::sources::{generate, SourceSpec};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    /// `file`, `stdin` or `source`.
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<&'static str>,
    /// Bits actually consumed; filled in once reading is done.
    pub bits: usize,
}

impl InputInfo {
    pub fn describe(&self) -> String {
        let what = match (self.kind, &self.path, &self.spec) {
            ("file", Some(p), _) => format!("file {p}"),
            ("source", _, Some(s)) => format!("source {s}"),
            (k, _, _) => k.to_string(),
        };
        match self.format {
            Some(f) => format!("{what} ({f}, {} bits)", self.bits),
            None => format!("{what} ({} bits)", self.bits),
        }
    }
}

enum Reader {
    Stream(BitStreamReader<Box<dyn Read>>),
    Memory { bits: BitString, at: usize },
}

pub struct Input {
    pub info: InputInfo,
    reader: Reader,
}

impl Input {
    /// A file path, or `-` for standard input.
    pub fn open_path(path: &PathBuf, format: Format) -> Result<Self> {
        let (kind, shown, inner): (_, _, Box<dyn Read>) = if path.as_os_str() == "-" {
            ("stdin", None, Box::new(io::stdin().lock()))
        } else {
            let f = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
            ("file", Some(path.display().to_string()), Box::new(f))
        };
        Ok(Self {
            info: InputInfo {
                kind,
                path: shown,
                spec: None,
                format: Some(format.name()),
                bits: 0,
            },
            reader: Reader::Stream(BitStreamReader::new(inner, format)),
        })
    }

    /// The first `n` bits of a generated source.
    pub fn generated(spec: &SourceSpec, n: usize) -> Result<Self> {
        Ok(Self {
            info: InputInfo {
                kind: "source",
                path: None,
                spec: Some(spec.to_string()),
                format: None,
                bits: 0,
            },
            reader: Reader::Memory {
                bits: generate(spec, n)?,
                at: 0,
            },
        })
    }

    /// Up to `max` further bits; fewer only at the end of the input.
    pub fn read(&mut self, max: usize) -> Result<BitString> {
        let chunk = match &mut self.reader {
            Reader::Stream(r) => r.read_chunk(max)?,
            Reader::Memory { bits, at } => {
                let end = bits.len().min(at.saturating_add(max));
                let chunk = BitString::from(&bits.as_slice()[*at..end]);
                *at = end;
                chunk
            }
        };
        self.info.bits += chunk.len();
        Ok(chunk)
    }
}

pub fn parse_spec(spec: &str, seed: Option<u64>) -> Result<SourceSpec> {
    let mut s: SourceSpec = spec.parse()?;
    if let Some(seed) = seed {
        s.seed = seed;
    }
    Ok(s)
}

/// Opens `--input` or `--source`, exactly one of which must be set.
pub fn open(
    path: Option<&PathBuf>,
    source: Option<&str>,
    seed: Option<u64>,
    format: Format,
    bits: Option<usize>,
) -> Result<Input> {
    match (path, source) {
        (Some(p), None) => Input::open_path(p, format),
        (None, Some(s)) => {
            let Some(n) = bits else {
                bail!("--source needs a length: pass --max-bits");
            };
            Input::generated(&parse_spec(s, seed)?, n)
        }
        _ => bail!("give exactly one of --input and --source"),
    }
}
