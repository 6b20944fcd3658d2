//! Test statistics, decision rules, p-values and battery combination.
//!
//! Everything is measured in bits and all logarithms are base 2.

mod battery;
mod complexity;
mod compression;
mod report;
mod scan;
mod schedule;

pub use battery::{battery_p_value, combine};
pub use complexity::{tau_k_prefix_terms, tau_k_statistic, tau_k_test, ComplexityEstimator};
pub use compression::{
    compression_statistic, compression_test, exact_p_value, EXACT_P_VALUE_LIMIT,
};
pub use report::{
    p_value_from_bits, ComponentReport, Decision, PValueKind, TestReport, P_VALUE_FLOOR,
};
pub use scan::{consistency_scan, scan_grid, ConfiguredTest, ScanResult, ScanStep};
pub use schedule::{omega_star, WeightSchedule};

use crate::error::{invalid, Result};

/// A significance level `alpha` in the open interval `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SignificanceLevel(f64);

impl SignificanceLevel {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(Self(alpha))
        } else {
            Err(invalid(format!(
                "significance level {alpha} is not in (0, 1)"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `log2(1/alpha)`: the number of bits a statistic must reach to reject.
    pub fn threshold_bits(self) -> f64 {
        -self.0.log2()
    }
}

impl Default for SignificanceLevel {
    fn default() -> Self {
        Self(0.01)
    }
}
