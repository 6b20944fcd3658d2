//! `rngcal`: compression-based randomness tests for bit streams.
//!
//! ```text
//! rngcal test --input data.bin --format raw --tests lz77,tauk --alpha 0.01
//! rngcal gen bernoulli:0.3:seed=7 --bits 100000 > biased.bits
//! rngcal scan --source dup:seed=1 --budget 1048576 --alpha 1e-6
//! ```
//!
//! Exit status: 0 when the null hypothesis is accepted, 1 when it is
//! rejected, 2 on usage or input errors.
//!
//! Batteries (`--tests a,b,...`) assign schedule weights by position, so
//! the order of the list matters. `RNGCAL_THREADS` caps the worker threads.

mod input;

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use rngcal::codes::format::{write_bits, Format};
use rngcal::codes::{BitString, PrefixCode};
use rngcal::lz::{Lz77Code, PairCoding};
use rngcal::sources::generate;
use rngcal::stats::{
    combine, consistency_scan, ConfiguredTest, ScanStep, SignificanceLevel, TestReport,
    WeightSchedule,
};
use serde::Serialize;

use input::{Input, InputInfo};

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
const TEST_IDS: &str = "lz77, lz77-elias, tauk";
const FULL_WINDOW: &str = "full-window";
const BOUNDED_WINDOW: &str = "bounded-window (non-consistent) mode";

#[derive(Parser)]
#[command(name = "rngcal", version, about = "Compression-based randomness tests")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test one bit stream and print a report.
    Test(TestArgs),
    /// Write bits from a seeded source.
    Gen(GenArgs),
    /// Test doubling prefixes of one stream and report the first rejection.
    Scan(ScanArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Bitfile,
    Raw,
    Ascii,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Bitfile => Format::Bitfile,
            FormatArg::Raw => Format::Raw,
            FormatArg::Ascii => Format::Ascii,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OutputArg {
    Text,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or `-` for standard input.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Generate the input instead, e.g. `bernoulli:0.5:seed=7`.
    #[arg(long, conflicts_with = "input")]
    source: Option<String>,
    /// Input encoding.
    #[arg(long, value_enum, default_value = "bitfile")]
    format: FormatArg,
    /// Use at most this many bits (required with --source).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_bits: Option<u64>,
    /// Replaces the seed given in --source.
    #[arg(long)]
    seed: Option<u64>,
}

impl InputArgs {
    fn open(&self, bits: Option<usize>) -> Result<Input> {
        input::open(
            self.input.as_ref(),
            self.source.as_deref(),
            self.seed,
            self.format.into(),
            bits,
        )
    }

    fn max_bits(&self) -> Option<usize> {
        self.max_bits
            .map(|n| usize::try_from(n).unwrap_or(usize::MAX))
    }
}

#[derive(Args)]
struct TestArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Comma-separated tests; more than one runs as a battery.
    #[arg(long, value_delimiter = ',', default_value = "lz77")]
    tests: Vec<String>,
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    /// `omega_star`, or comma-separated battery weights.
    #[arg(long, default_value = "omega_star")]
    schedule: String,
    /// Largest input, in bits, tested in one piece. Longer inputs fall back
    /// to independent windows of this size (lz77 only).
    #[arg(long, default_value_t = 1 << 25, value_parser = clap::value_parser!(u64).range(64..))]
    memory_cap: u64,
    #[arg(long, value_enum, default_value = "text")]
    output: OutputArg,
}

#[derive(Args)]
struct GenArgs {
    /// Source spec: bernoulli:<p>, markov:<p00>,<p01>,<p10>,<p11>,
    /// drift:<p0>,<rate>, regime:<len>@<p>,..., or dup; each optionally
    /// followed by :seed=<u64>.
    spec: String,
    #[arg(long)]
    bits: usize,
    #[arg(long, value_enum, default_value = "bitfile")]
    format: FormatArg,
    /// Replaces the seed given in the spec.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; standard output by default.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "lz77")]
    test: String,
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    /// First prefix length.
    #[arg(long, default_value_t = 1024)]
    start: usize,
    /// Longest prefix length.
    #[arg(long, default_value_t = 1 << 20)]
    budget: usize,
    #[arg(long, value_enum, default_value = "text")]
    output: OutputArg,
}

fn parse_test(id: &str) -> Result<ConfiguredTest> {
    Ok(match id.trim() {
        "lz77" => ConfiguredTest::lz77(),
        "lz77-elias" => ConfiguredTest::Compression(Lz77Code::new(PairCoding::Elias)),
        "tauk" => ConfiguredTest::tau_k(),
        other => bail!("unknown test {other:?}; tests: {TEST_IDS}"),
    })
}

fn parse_schedule(s: &str) -> Result<WeightSchedule> {
    if s == "omega_star" {
        return Ok(WeightSchedule::OmegaStar);
    }
    let weights = s
        .split(',')
        .map(|w| w.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| format!("schedule {s:?} is neither omega_star nor a list of weights"))?;
    Ok(WeightSchedule::explicit(weights)?)
}

#[derive(Serialize)]
struct TestConfig {
    tests: Vec<String>,
    alpha: f64,
    schedule: WeightSchedule,
    max_bits: Option<usize>,
    memory_cap_bits: usize,
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    window_bits: Option<usize>,
}

#[derive(Serialize)]
struct TestDocument<'a> {
    tool_version: &'static str,
    input: &'a InputInfo,
    config: &'a TestConfig,
    #[serde(flatten)]
    report: &'a TestReport,
}

/// Bits saved by the default LZ77 code over independent `window`-bit
/// blocks. Block boundaries depend only on the total length, so the
/// concatenated code is still prefix-free on each length class and the
/// `2^-saved` bound stands; matches across blocks are lost, which is why
/// this mode is not consistent.
fn windowed_saving(
    first: BitString,
    input: &mut Input,
    window: usize,
    limit: usize,
) -> Result<f64> {
    let code = Lz77Code::default();
    let mut pending = first;
    let mut saved = 0.0;
    let mut done = 0usize;
    while !pending.is_empty() {
        let take = pending.len().min(window);
        let block = pending.prefix(take);
        saved += take as f64 - code.code_length(&block) as f64;
        done += take;
        let mut rest = BitString::from(&pending.as_slice()[take..]);
        let want = (window - rest.len()).min(limit - done - rest.len());
        rest.extend_from_bits(input.read(want)?.as_slice());
        pending = rest;
    }
    Ok(saved)
}

fn cmd_test(args: TestArgs) -> Result<ExitCode> {
    let alpha = SignificanceLevel::new(args.alpha)?;
    let tests = args
        .tests
        .iter()
        .map(|t| parse_test(t))
        .collect::<Result<Vec<_>>>()?;
    if tests.is_empty() {
        bail!("select at least one test");
    }
    let schedule = parse_schedule(&args.schedule)?;
    let cap = usize::try_from(args.memory_cap).unwrap_or(usize::MAX);
    let limit = args.input.max_bits().unwrap_or(usize::MAX);
    let mut input = args.input.open(args.input.max_bits())?;

    let first = input.read(limit.min(cap.saturating_add(1)))?;
    if first.is_empty() {
        bail!("input holds no bits");
    }
    let (report, mode, window_bits) = if first.len() <= cap {
        let reports = tests
            .par_iter()
            .map(|t| t.run(&first, alpha))
            .collect::<rngcal::Result<Vec<_>>>()?;
        let report = if reports.len() == 1 {
            reports.into_iter().next().expect("one report")
        } else {
            let named: Vec<(String, TestReport)> = tests
                .iter()
                .map(|t| t.id().to_string())
                .zip(reports)
                .collect();
            combine(&named, &schedule, alpha)?
        };
        (report, FULL_WINDOW, None)
    } else {
        if tests != [ConfiguredTest::lz77()] {
            bail!(
                "input exceeds the {cap}-bit memory cap; only a lone lz77 test has a \
                 bounded-window mode (raise --memory-cap or lower --max-bits)"
            );
        }
        let saved = windowed_saving(first, &mut input, cap, limit)?;
        (
            TestReport::from_bits_saved(saved, alpha),
            BOUNDED_WINDOW,
            Some(cap),
        )
    };

    let config = TestConfig {
        tests: tests.iter().map(|t| t.id().to_string()).collect(),
        alpha: alpha.value(),
        schedule,
        max_bits: args.input.max_bits(),
        memory_cap_bits: cap,
        mode,
        window_bits,
    };
    let mut out = io::stdout().lock();
    match args.output {
        OutputArg::Json => {
            let doc = TestDocument {
                tool_version: TOOL_VERSION,
                input: &input.info,
                config: &config,
                report: &report,
            };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
        OutputArg::Text => write_test_text(&mut out, &input.info, &config, &report)?,
    }
    Ok(exit_for(report.rejected()))
}

fn write_test_text(
    out: &mut impl Write,
    input: &InputInfo,
    config: &TestConfig,
    r: &TestReport,
) -> Result<()> {
    writeln!(out, "rngcal {TOOL_VERSION}")?;
    writeln!(out, "input:     {}", input.describe())?;
    if config.mode != FULL_WINDOW {
        writeln!(
            out,
            "mode:      {} with {}-bit windows",
            config.mode,
            config.window_bits.unwrap_or_default()
        )?;
    }
    if !r.components.is_empty() {
        writeln!(
            out,
            "{:<12}{:>16}{:>14}{:>12}",
            "test", "statistic", "p-value", "weight"
        )?;
        for c in &r.components {
            writeln!(
                out,
                "{:<12}{:>16.3}{:>14.4e}{:>12.6}",
                c.test_id, c.statistic_bits, c.p_value, c.weight
            )?;
        }
        writeln!(out, "battery:   p-value {:.4e}", r.p_value)?;
    } else {
        writeln!(
            out,
            "test:      {}, statistic {:.3} bits, p-value {:.4e}",
            config.tests[0], r.statistic_bits, r.p_value
        )?;
    }
    let kind = match r.p_value_kind {
        rngcal::stats::PValueKind::Exact => "exact",
        rngcal::stats::PValueKind::UpperBound => "upper bound",
    };
    writeln!(
        out,
        "decision:  {} at alpha = {} (p-value is an {kind})",
        if r.rejected() { "REJECT" } else { "accept" },
        r.alpha
    )?;
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode> {
    let spec = input::parse_spec(&args.spec, args.seed)?;
    let x = generate(&spec, args.bits)?;
    let format = args.format.into();
    match &args.out {
        Some(path) => {
            let f = std::fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?;
            let mut w = BufWriter::new(f);
            write_bits(&mut w, &x, format)?;
            w.flush()?;
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            write_bits(&mut w, &x, format)?;
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ScanConfig {
    test: String,
    alpha: f64,
    start: usize,
    budget: usize,
}

#[derive(Serialize)]
struct ScanDocument<'a> {
    tool_version: &'static str,
    input: &'a InputInfo,
    config: &'a ScanConfig,
    steps: &'a [ScanStep],
    first_rejection: Option<usize>,
}

fn cmd_scan(args: ScanArgs) -> Result<ExitCode> {
    let alpha = SignificanceLevel::new(args.alpha)?;
    let test = parse_test(&args.test)?;
    if args.start == 0 || args.start > args.budget {
        bail!("need 0 < --start <= --budget");
    }
    let budget = args
        .input
        .max_bits()
        .map_or(args.budget, |m| m.min(args.budget));
    let mut input = args.input.open(Some(budget))?;
    let stream = input.read(budget)?;
    if stream.len() < args.start {
        bail!(
            "input holds {} bits, fewer than --start {}",
            stream.len(),
            args.start
        );
    }
    let config = ScanConfig {
        test: test.id().to_string(),
        alpha: alpha.value(),
        start: args.start,
        budget: stream.len(),
    };
    let result = consistency_scan(&stream, &test, alpha, args.start, stream.len())?;
    let mut out = io::stdout().lock();
    match args.output {
        OutputArg::Json => {
            let doc = ScanDocument {
                tool_version: TOOL_VERSION,
                input: &input.info,
                config: &config,
                steps: &result.steps,
                first_rejection: result.first_rejection,
            };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
        OutputArg::Text => {
            writeln!(out, "rngcal {TOOL_VERSION}")?;
            writeln!(out, "input:     {}", input.info.describe())?;
            writeln!(
                out,
                "test:      {} at alpha = {}",
                config.test, config.alpha
            )?;
            writeln!(
                out,
                "{:>12}{:>16}{:>14}  decision",
                "length", "statistic", "p-value"
            )?;
            for s in &result.steps {
                writeln!(
                    out,
                    "{:>12}{:>16.3}{:>14.4e}  {}",
                    s.length,
                    s.statistic_bits,
                    s.p_value,
                    if s.rejected { "REJECT" } else { "accept" }
                )?;
            }
            match result.first_rejection {
                Some(n) => writeln!(out, "first rejection at {n} bits")?,
                None => writeln!(
                    out,
                    "first rejection: none within budget of {} bits",
                    config.budget
                )?,
            }
        }
    }
    Ok(exit_for(result.first_rejection.is_some()))
}

fn exit_for(rejected: bool) -> ExitCode {
    if rejected {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("RNGCAL_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .with_context(|| format!("RNGCAL_THREADS={v:?} is not a positive integer"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = configure_threads().and_then(|()| match cli.command {
        Command::Test(a) => cmd_test(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Scan(a) => cmd_scan(a),
    });
    match run {
        Ok(code) => code,
        Err(e) => {
            eprintln!("rngcal: {e:#}");
            ExitCode::from(2)
        }
    }
}
