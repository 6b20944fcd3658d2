//! The prefix-scanning complexity test.
//!
//! The statistic is
//!
//! ```text
//! tau_K(x) = max_{m=1..n} ( m - K~(x|_1^m) - log2(1/omega_m) )
//! ```
//!
//! and the null is rejected when `tau_K >= log2(1/alpha)`. Each prefix
//! length is one member of a battery run at level `alpha * omega_m`, so the
//! overall Type-I error is at most `alpha`.
//!
//! `K~` stands in for a resource-bounded Kolmogorov complexity. It is the
//! best of a finite ensemble of `k` prefix-free code lengths plus a
//! `log2 k` surcharge for naming the winner:
//!
//! ```text
//! K~(w) = log2 k + min_j estimate_j(w)
//! ```
//!
//! Because `sum_w 2^-K~(w) <= (1/k) sum_j sum_w 2^-estimate_j(w) <= 1` on
//! every length class, at most `2^m alpha omega_m` strings of length `m`
//! can trigger the prefix-`m` member. The guarantee is exact; what the
//! ensemble gives up relative to true complexity is power against
//! regularities none of its codes can see.

use super::report::{p_value_from_bits, PValueKind, TestReport};
use super::{SignificanceLevel, WeightSchedule};
use crate::codes::{BitString, IdentityCode, PrefixCode};
use crate::error::{invalid, Result};
use crate::lz::Lz77Code;

/// An upper bound on description length whose values, on every length
/// class, are the lengths of a prefix-free code.
pub trait ComplexityEstimator: Send + Sync {
    fn id(&self) -> &str;

    /// Description length of `w` in bits.
    fn estimate(&self, w: &BitString) -> f64;

    /// `estimate(x|_1^m)` for `m = 0..=n`.
    fn prefix_estimates(&self, x: &BitString) -> Vec<f64> {
        (0..=x.len()).map(|m| self.estimate(&x.prefix(m))).collect()
    }
}

impl ComplexityEstimator for IdentityCode {
    fn id(&self) -> &str {
        self.name()
    }

    fn estimate(&self, w: &BitString) -> f64 {
        w.len() as f64
    }

    fn prefix_estimates(&self, x: &BitString) -> Vec<f64> {
        (0..=x.len()).map(|m| m as f64).collect()
    }
}

impl ComplexityEstimator for Lz77Code {
    fn id(&self) -> &str {
        self.name()
    }

    fn estimate(&self, w: &BitString) -> f64 {
        self.code_length(w) as f64
    }

    fn prefix_estimates(&self, x: &BitString) -> Vec<f64> {
        self.prefix_code_lengths(x)
            .into_iter()
            .map(|l| l as f64)
            .collect()
    }
}

/// `m - K~(x|_1^m) - log2(1/omega_m)` for `m = 1..=n` (index `m - 1`).
pub fn tau_k_prefix_terms(
    x: &BitString,
    estimators: &[&dyn ComplexityEstimator],
    schedule: &WeightSchedule,
) -> Result<Vec<f64>> {
    if estimators.is_empty() {
        return Err(invalid("the complexity test needs at least one estimator"));
    }
    let surcharge = (estimators.len() as f64).log2();
    let mut best = vec![f64::INFINITY; x.len() + 1];
    for e in estimators {
        for (b, v) in best.iter_mut().zip(e.prefix_estimates(x)) {
            *b = b.min(v);
        }
    }
    (1..=x.len())
        .map(|m| Ok(m as f64 - (surcharge + best[m]) - schedule.penalty_bits(m as u64)?))
        .collect()
}

/// `tau_K(x)` and the first prefix length attaining it.
pub fn tau_k_statistic(
    x: &BitString,
    estimators: &[&dyn ComplexityEstimator],
    schedule: &WeightSchedule,
) -> Result<(f64, usize)> {
    if x.is_empty() {
        return Err(invalid("the complexity test needs at least one bit"));
    }
    let terms = tau_k_prefix_terms(x, estimators, schedule)?;
    let (arg, best) = terms
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(ai, av), (i, &v)| {
            if v > av {
                (i, v)
            } else {
                (ai, av)
            }
        });
    Ok((best, arg + 1))
}

pub fn tau_k_test(
    x: &BitString,
    estimators: &[&dyn ComplexityEstimator],
    schedule: &WeightSchedule,
    alpha: SignificanceLevel,
) -> Result<TestReport> {
    let (tau, _) = tau_k_statistic(x, estimators, schedule)?;
    Ok(TestReport::new(
        tau,
        p_value_from_bits(tau),
        PValueKind::UpperBound,
        alpha,
    ))
}
