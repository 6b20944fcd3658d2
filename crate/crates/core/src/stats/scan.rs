//! Consistency scans: evaluate a test on a doubling grid of prefixes of one
//! sequence and report the first prefix length at which it rejects.

use serde::Serialize;

use super::complexity::{tau_k_test, ComplexityEstimator};
use super::compression::compression_test;
use super::report::TestReport;
use super::{SignificanceLevel, WeightSchedule};
use crate::codes::{BitString, IdentityCode};
use crate::error::{invalid, Result};
use crate::lz::{Lz77Code, PairCoding};

/// A test with all of its parameters except the significance level.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfiguredTest {
    /// Compression test with an LZ77 code.
    Compression(Lz77Code),
    /// Complexity test over the identity code plus the listed LZ77 codes.
    TauK {
        codes: Vec<Lz77Code>,
        schedule: WeightSchedule,
    },
}

impl ConfiguredTest {
    pub fn lz77() -> Self {
        ConfiguredTest::Compression(Lz77Code::default())
    }

    /// Identity plus the default LZ77 code, penalised by `omega*`.
    pub fn tau_k() -> Self {
        ConfiguredTest::TauK {
            codes: vec![Lz77Code::new(PairCoding::Adaptive)],
            schedule: WeightSchedule::OmegaStar,
        }
    }

    /// The identifier used in reports and on the command line.
    pub fn id(&self) -> &'static str {
        match self {
            ConfiguredTest::Compression(c) if c.coding == PairCoding::Elias => "lz77-elias",
            ConfiguredTest::Compression(_) => "lz77",
            ConfiguredTest::TauK { .. } => "tauk",
        }
    }

    pub fn run(&self, x: &BitString, alpha: SignificanceLevel) -> Result<TestReport> {
        match self {
            ConfiguredTest::Compression(code) => compression_test(x, code, alpha),
            ConfiguredTest::TauK { codes, schedule } => {
                let mut estimators: Vec<&dyn ComplexityEstimator> = vec![&IdentityCode];
                estimators.extend(codes.iter().map(|c| c as &dyn ComplexityEstimator));
                tau_k_test(x, &estimators, schedule, alpha)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanStep {
    pub length: usize,
    pub statistic_bits: f64,
    pub p_value: f64,
    pub rejected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub steps: Vec<ScanStep>,
    /// `None` when no grid point up to the budget rejected.
    pub first_rejection: Option<usize>,
}

/// The prefix lengths `start, 2 start, 4 start, ...` not exceeding `budget`.
pub fn scan_grid(start: usize, budget: usize) -> Vec<usize> {
    std::iter::successors(Some(start), |&n| n.checked_mul(2))
        .take_while(|&n| n <= budget)
        .collect()
}

/// Runs `test` on the doubling grid of prefixes of `stream`, stopping at
/// the first rejection. `stream` must hold at least `budget` bits.
pub fn consistency_scan(
    stream: &BitString,
    test: &ConfiguredTest,
    alpha: SignificanceLevel,
    start: usize,
    budget: usize,
) -> Result<ScanResult> {
    if start == 0 {
        return Err(invalid("scan must start at a positive prefix length"));
    }
    if stream.len() < budget {
        return Err(invalid(format!(
            "stream holds {} bits but the budget is {budget}",
            stream.len()
        )));
    }
    let mut steps = Vec::new();
    for n in scan_grid(start, budget) {
        let r = test.run(&stream.prefix(n), alpha)?;
        let rejected = r.rejected();
        steps.push(ScanStep {
            length: n,
            statistic_bits: r.statistic_bits,
            p_value: r.p_value,
            rejected,
        });
        if rejected {
            return Ok(ScanResult {
                steps,
                first_rejection: Some(n),
            });
        }
    }
    Ok(ScanResult {
        steps,
        first_rejection: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_doubles_up_to_budget() {
        assert_eq!(scan_grid(3, 30), vec![3, 6, 12, 24]);
        assert_eq!(scan_grid(8, 8), vec![8]);
        assert!(scan_grid(9, 8).is_empty());
    }

    #[test]
    fn zeros_are_rejected_early() {
        let x = BitString::zeros(1 << 12);
        let r = consistency_scan(
            &x,
            &ConfiguredTest::lz77(),
            SignificanceLevel::new(1e-6).unwrap(),
            16,
            1 << 12,
        )
        .unwrap();
        let first = r.first_rejection.unwrap();
        assert_eq!(r.steps.last().unwrap().length, first);
        assert!(first <= 64, "{first}");
    }

    #[test]
    fn short_stream_is_an_error() {
        let x = BitString::zeros(10);
        assert!(consistency_scan(
            &x,
            &ConfiguredTest::lz77(),
            SignificanceLevel::default(),
            1,
            11
        )
        .is_err());
        assert!(consistency_scan(
            &x,
            &ConfiguredTest::lz77(),
            SignificanceLevel::default(),
            0,
            10
        )
        .is_err());
    }
}
