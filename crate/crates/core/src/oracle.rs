//! Brute-force and closed-form references used to check the main code paths.

use crate::codes::BitString;
use crate::error::{invalid, Error, Result};

/// Longest length [`exhaustive_reject_count`] will enumerate.
pub const EXHAUSTIVE_LIMIT: usize = 14;

/// Longest length [`enumerate_p_values`] and
/// [`known_mu_p_value_by_enumeration`] will enumerate.
pub const ENUMERATION_LIMIT: usize = 24;

/// Shannon entropy in bits per symbol, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EntropyValue(f64);

impl EntropyValue {
    pub fn bits(self) -> f64 {
        self.0
    }
}

fn plogp(p: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// `h(p) = -p log2 p - (1-p) log2 (1-p)`, with `0 log 0 = 0`.
pub fn bernoulli_entropy(p: f64) -> Result<EntropyValue> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("{p} is not a probability")));
    }
    Ok(EntropyValue((plogp(p) + plogp(1.0 - p)).clamp(0.0, 1.0)))
}

/// `log2 sum_i 2^(v_i)` without overflow.
fn log2_sum_exp2(values: impl Iterator<Item = f64>) -> f64 {
    let values: Vec<f64> = values.collect();
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + values.iter().map(|v| (v - max).exp2()).sum::<f64>().log2()
}

/// `log2` of the p-value of the statistic `tau(y) = mu(y)` for the i.i.d.
/// measure `mu = Bernoulli(p)`, under the uniform null:
///
/// ```text
/// pi_mu(x) = |{y in {0,1}^n : mu(y) >= mu(x)}| / 2^n
/// ```
///
/// `mu(y)` depends only on the number of ones `w`, and is monotone in `w`,
/// so the count is a binomial tail. Ties count against `x`. Summation is in
/// log space, so long inputs do not underflow.
pub fn known_mu_log2_p_value(x: &BitString, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid(format!(
            "known-measure p-value needs 0 < p < 1, got {p}"
        )));
    }
    let n = x.len();
    let ones = x.count_ones();
    // log2 C(n, w) for w = 0..=n.
    let mut log_binom = Vec::with_capacity(n + 1);
    let mut acc = 0.0f64;
    log_binom.push(acc);
    for w in 0..n {
        acc += ((n - w) as f64).log2() - ((w + 1) as f64).log2();
        log_binom.push(acc);
    }
    let range = if p > 0.5 {
        ones..=n
    } else if p < 0.5 {
        0..=ones
    } else {
        return Ok(0.0);
    };
    if range == (0..=n) {
        return Ok(0.0);
    }
    let log_count = log2_sum_exp2(range.map(|w| log_binom[w]));
    Ok((log_count - n as f64).min(0.0))
}

/// [`known_mu_log2_p_value`] as a probability, floored at `2^-1024`.
pub fn known_mu_p_value(x: &BitString, p: f64) -> Result<f64> {
    Ok(crate::stats::p_value_from_bits(-known_mu_log2_p_value(
        x, p,
    )?))
}

/// The same p-value by comparing `mu(y)` against `mu(x)` for every `y`.
pub fn known_mu_p_value_by_enumeration(x: &BitString, p: f64) -> Result<f64> {
    let n = x.len();
    if n > ENUMERATION_LIMIT {
        return Err(Error::Infeasible {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mu = |ones: u32| p.powi(ones as i32) * (1.0 - p).powi(n as i32 - ones as i32);
    let target = mu(x.count_ones() as u32);
    let hits = (0..1u64 << n)
        .filter(|v| mu(v.count_ones()) >= target)
        .count();
    Ok(hits as f64 / (1u64 << n) as f64)
}

/// The number of `x in {0,1}^n` on which `rejects` returns true.
pub fn exhaustive_reject_count<F>(rejects: F, n: usize) -> Result<u64>
where
    F: Fn(&BitString) -> bool,
{
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::Infeasible {
            n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    Ok((0..1u64 << n)
        .filter(|&v| rejects(&BitString::from_index(v, n)))
        .count() as u64)
}

/// Exact p-values of `tau` for every `x in {0,1}^n`, indexed by the
/// big-endian value of `x`. Evaluates `tau` once per string and ranks the
/// results, independently of `stats::exact_p_value`'s per-input count.
pub fn enumerate_p_values<F>(n: usize, tau: F) -> Result<Vec<f64>>
where
    F: Fn(&BitString) -> f64,
{
    if n > ENUMERATION_LIMIT {
        return Err(Error::Infeasible {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let values: Vec<f64> = (0..1u64 << n)
        .map(|v| tau(&BitString::from_index(v, n)))
        .collect();
    let mut sorted = values.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let total = values.len() as f64;
    Ok(values
        .iter()
        .map(|v| sorted.partition_point(|s| s >= v) as f64 / total)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_examples() {
        assert_eq!(bernoulli_entropy(0.5).unwrap().bits(), 1.0);
        assert_eq!(bernoulli_entropy(0.0).unwrap().bits(), 0.0);
        assert_eq!(bernoulli_entropy(1.0).unwrap().bits(), 0.0);
        // -0.3 log2 0.3 - 0.7 log2 0.7
        let h = bernoulli_entropy(0.3).unwrap().bits();
        assert!((h - 0.881_290_899_230_692_7).abs() < 1e-10, "{h}");
        assert!(bernoulli_entropy(-0.1).is_err());
        assert!(bernoulli_entropy(1.1).is_err());
    }

    #[test]
    fn uniform_measure_gives_one() {
        let x: BitString = "0111010".parse().unwrap();
        assert_eq!(known_mu_p_value(&x, 0.5).unwrap(), 1.0);
    }

    #[test]
    fn three_ones_under_heavy_bias() {
        let x: BitString = "111".parse().unwrap();
        assert!((known_mu_p_value(&x, 0.9).unwrap() - 0.125).abs() < 1e-15);
        assert_eq!(known_mu_p_value_by_enumeration(&x, 0.9).unwrap(), 0.125);
    }

    #[test]
    fn known_mu_rejects_degenerate_p() {
        let x: BitString = "1".parse().unwrap();
        assert!(known_mu_p_value(&x, 0.0).is_err());
        assert!(known_mu_p_value(&x, 1.0).is_err());
    }

    #[test]
    fn long_inputs_stay_finite_in_log_space() {
        let x = BitString::zeros(10_000);
        let l = known_mu_log2_p_value(&x, 0.2).unwrap();
        assert_eq!(l, -10_000.0);
        assert_eq!(
            known_mu_p_value(&x, 0.2).unwrap(),
            crate::stats::P_VALUE_FLOOR
        );
    }

    #[test]
    fn guards() {
        assert!(matches!(
            exhaustive_reject_count(|_| true, 15),
            Err(Error::Infeasible { n: 15, limit: 14 })
        ));
        assert_eq!(exhaustive_reject_count(|_| false, 10).unwrap(), 0);
        assert_eq!(exhaustive_reject_count(|_| true, 3).unwrap(), 8);
    }

    #[test]
    fn enumerated_counting_statistic() {
        let ps = enumerate_p_values(3, |y| y.count_ones() as f64).unwrap();
        assert_eq!(ps[0b111], 0.125);
        assert_eq!(ps[0b000], 1.0);
        assert_eq!(ps[0b011], 0.5);
    }
}
