//! The compression test: reject when a prefix-free code saves at least
//! `log2(1/alpha)` bits.
//!
//! Within one length class the codewords of a prefix-free code satisfy
//! Kraft, so at most `2^(n-t)` strings of length `n` have codes of length
//! `<= n - t`. Under the uniform null the probability of saving `t` bits is
//! therefore at most `2^-t`, which is the p-value bound reported here.

use super::report::{p_value_from_bits, PValueKind, TestReport};
use super::SignificanceLevel;
use crate::codes::{BitString, PrefixCode};
use crate::error::{invalid, Error, Result};

/// Longest input accepted by [`exact_p_value`].
pub const EXACT_P_VALUE_LIMIT: usize = 24;

/// `n - |phi(x)|`, the number of bits saved by `phi`.
pub fn compression_statistic(x: &BitString, phi: &dyn PrefixCode) -> f64 {
    x.len() as f64 - phi.code_length(x) as f64
}

pub fn compression_test(
    x: &BitString,
    phi: &dyn PrefixCode,
    alpha: SignificanceLevel,
) -> Result<TestReport> {
    if x.is_empty() {
        return Err(invalid("compression test needs at least one bit"));
    }
    let tau = compression_statistic(x, phi);
    Ok(TestReport::new(
        tau,
        p_value_from_bits(tau),
        PValueKind::UpperBound,
        alpha,
    ))
}

/// `|{y in {0,1}^n : tau(y) >= tau(x)}| / 2^n` by full enumeration.
pub fn exact_p_value<F>(x: &BitString, tau: F) -> Result<f64>
where
    F: Fn(&BitString) -> f64,
{
    let n = x.len();
    if n > EXACT_P_VALUE_LIMIT {
        return Err(Error::Infeasible {
            n,
            limit: EXACT_P_VALUE_LIMIT,
        });
    }
    let observed = tau(x);
    let hits = (0..1u64 << n)
        .filter(|&v| tau(&BitString::from_index(v, n)) >= observed)
        .count();
    Ok(hits as f64 / (1u64 << n) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::IdentityCode;
    use crate::lz::Lz77Code;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn zero_saving_never_rejects() {
        let x = bs("0110");
        for a in [0.5, 0.1, 0.01] {
            let r =
                compression_test(&x, &IdentityCode, SignificanceLevel::new(a).unwrap()).unwrap();
            assert_eq!(r.statistic_bits, 0.0);
            assert_eq!(r.p_value, 1.0);
            assert!(!r.rejected());
        }
    }

    #[test]
    fn alpha_one_percent_needs_seven_bits() {
        let threshold = SignificanceLevel::new(0.01).unwrap().threshold_bits();
        assert!((threshold - 100f64.log2()).abs() < 1e-12);
        assert!(6.0 < threshold && threshold < 7.0);
        // The decision at integer savings flips between 6 and 7 bits.
        assert!(p_value_from_bits(6.0) > 0.01);
        assert!(p_value_from_bits(7.0) <= 0.01);
    }

    #[test]
    fn empty_input_is_an_error() {
        let r = compression_test(
            &BitString::new(),
            &Lz77Code::default(),
            SignificanceLevel::default(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn exact_p_value_examples() {
        assert_eq!(exact_p_value(&bs("0101"), |_| 0.0).unwrap(), 1.0);
        let ones = |y: &BitString| y.count_ones() as f64;
        assert_eq!(exact_p_value(&bs("111"), ones).unwrap(), 0.125);
        assert_eq!(exact_p_value(&bs("000"), ones).unwrap(), 1.0);
        assert!(matches!(
            exact_p_value(&BitString::zeros(25), ones),
            Err(Error::Infeasible { n: 25, limit: 24 })
        ));
    }
}
