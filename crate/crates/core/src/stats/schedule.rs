use serde::Serialize;

use crate::error::{invalid, Result};

/// `omega*_i = 1 / (i (i + 1))`. The partial sums telescope to
/// `1 - 1/(n+1)`, so the whole sequence sums to one.
pub fn omega_star(i: u64) -> Result<f64> {
    if i == 0 {
        return Err(invalid("schedule index starts at 1"));
    }
    let i = i as f64;
    Ok(1.0 / (i * (i + 1.0)))
}

/// A sequence of positive weights `omega_1, omega_2, ...` with total mass at
/// most one. Used both to split a significance level across the tests of a
/// battery and as the per-prefix penalty of the complexity test.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "weights")]
pub enum WeightSchedule {
    #[default]
    OmegaStar,
    /// An explicit head. Indices past the head share the unused mass
    /// `r = 1 - sum(head)` in the `omega*` shape: `omega_{k+j} = r * omega*_j`.
    Explicit(Vec<f64>),
}

const MASS_TOLERANCE: f64 = 1e-12;

impl WeightSchedule {
    /// Validates an explicit head: finite, positive, total at most one.
    pub fn explicit(weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(invalid(format!("schedule weight {w} is not positive")));
        }
        let mass: f64 = weights.iter().sum();
        if mass > 1.0 + MASS_TOLERANCE {
            return Err(invalid(format!("schedule weights sum to {mass} > 1")));
        }
        Ok(WeightSchedule::Explicit(weights))
    }

    /// `omega_i` for `i >= 1`.
    pub fn weight(&self, i: u64) -> Result<f64> {
        if i == 0 {
            return Err(invalid("schedule index starts at 1"));
        }
        match self {
            WeightSchedule::OmegaStar => omega_star(i),
            WeightSchedule::Explicit(head) => match head.get(i as usize - 1) {
                Some(&w) => Ok(w),
                None => {
                    let rest = (1.0 - head.iter().sum::<f64>()).max(0.0);
                    Ok(rest * omega_star(i - head.len() as u64)?)
                }
            },
        }
    }

    /// `log2(1/omega_i)`; infinite when the weight is zero.
    pub fn penalty_bits(&self, i: u64) -> Result<f64> {
        match self {
            WeightSchedule::OmegaStar if i > 0 => {
                let i = i as f64;
                Ok(i.log2() + (i + 1.0).log2())
            }
            _ => Ok(-self.weight(i)?.log2()),
        }
    }

    /// Total mass, exact for the closed forms.
    pub fn total_mass(&self) -> f64 {
        match self {
            WeightSchedule::OmegaStar => 1.0,
            WeightSchedule::Explicit(head) => head.iter().sum::<f64>().max(1.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_star_values() {
        assert_eq!(omega_star(1).unwrap(), 0.5);
        assert_eq!(omega_star(3).unwrap(), 1.0 / 12.0);
        assert!(omega_star(0).is_err());
    }

    #[test]
    fn omega_star_partial_sum_telescopes() {
        let s: f64 = (1..=1000).map(|i| omega_star(i).unwrap()).sum();
        assert!((s - 1000.0 / 1001.0).abs() < 1e-12, "{s}");
    }

    #[test]
    fn penalty_matches_weight() {
        let w = WeightSchedule::OmegaStar;
        for i in [1, 2, 7, 1000, 1 << 30] {
            let direct = -w.weight(i).unwrap().log2();
            assert!((w.penalty_bits(i).unwrap() - direct).abs() < 1e-9);
        }
    }

    #[test]
    fn explicit_head_and_tail() {
        let w = WeightSchedule::explicit(vec![0.5, 0.25]).unwrap();
        assert_eq!(w.weight(1).unwrap(), 0.5);
        assert_eq!(w.weight(2).unwrap(), 0.25);
        assert_eq!(w.weight(3).unwrap(), 0.25 * 0.5);
        let tail: f64 = (1..=100_000).map(|i| w.weight(i).unwrap()).sum();
        assert!(tail <= 1.0 && tail > 0.9999);

        let full = WeightSchedule::explicit(vec![1.0]).unwrap();
        assert_eq!(full.weight(2).unwrap(), 0.0);
        assert!(full.penalty_bits(2).unwrap().is_infinite());
    }

    #[test]
    fn explicit_validation() {
        assert!(WeightSchedule::explicit(vec![0.6, 0.6]).is_err());
        assert!(WeightSchedule::explicit(vec![0.0]).is_err());
        assert!(WeightSchedule::explicit(vec![f64::NAN]).is_err());
        assert!(WeightSchedule::explicit(vec![]).is_ok());
    }
}
