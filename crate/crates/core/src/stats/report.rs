use serde::Serialize;

use super::SignificanceLevel;

/// Smallest reported p-value, `2^-1024`.
pub const P_VALUE_FLOOR: f64 = 5.562684646268003e-309;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PValueKind {
    Exact,
    UpperBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Reject,
    Accept,
}

/// One member of a battery.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentReport {
    pub test_id: String,
    pub statistic_bits: f64,
    pub p_value: f64,
    pub p_value_kind: PValueKind,
    pub weight: f64,
}

/// Outcome of a test or battery at a fixed significance level.
///
/// `decision` is `Reject` exactly when `p_value <= alpha`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestReport {
    pub statistic_bits: f64,
    pub p_value: f64,
    pub p_value_kind: PValueKind,
    pub alpha: f64,
    pub decision: Decision,
    pub components: Vec<ComponentReport>,
}

impl TestReport {
    pub(crate) fn new(
        statistic_bits: f64,
        p_value: f64,
        kind: PValueKind,
        alpha: SignificanceLevel,
    ) -> Self {
        let p_value = clamp_p_value(p_value);
        Self {
            statistic_bits,
            p_value,
            p_value_kind: kind,
            alpha: alpha.value(),
            decision: if p_value <= alpha.value() {
                Decision::Reject
            } else {
                Decision::Accept
            },
            components: Vec::new(),
        }
    }

    /// A report whose p-value is the Kraft bound `2^-statistic_bits`.
    pub fn from_bits_saved(statistic_bits: f64, alpha: SignificanceLevel) -> Self {
        Self::new(
            statistic_bits,
            p_value_from_bits(statistic_bits),
            PValueKind::UpperBound,
            alpha,
        )
    }

    pub fn rejected(&self) -> bool {
        self.decision == Decision::Reject
    }
}

pub(crate) fn clamp_p_value(p: f64) -> f64 {
    if p.is_nan() {
        1.0
    } else {
        p.clamp(P_VALUE_FLOOR, 1.0)
    }
}

/// `min(1, 2^-bits)`, floored at [`P_VALUE_FLOOR`]: the Kraft bound on the
/// p-value of a statistic that counts bits saved by a prefix-free code.
pub fn p_value_from_bits(bits: f64) -> f64 {
    if bits <= 0.0 {
        1.0
    } else {
        clamp_p_value((-bits).exp2())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_is_two_to_minus_1024() {
        assert_eq!(P_VALUE_FLOOR, 2f64.powi(-1024));
        assert_eq!(p_value_from_bits(5000.0), P_VALUE_FLOOR);
    }

    #[test]
    fn bits_to_p_value() {
        assert_eq!(p_value_from_bits(0.0), 1.0);
        assert_eq!(p_value_from_bits(-3.0), 1.0);
        assert_eq!(p_value_from_bits(7.0), 1.0 / 128.0);
    }

    #[test]
    fn decision_follows_p_value() {
        let a = SignificanceLevel::new(0.5).unwrap();
        assert!(TestReport::new(1.0, 0.5, PValueKind::UpperBound, a).rejected());
        assert!(!TestReport::new(1.0, 0.500001, PValueKind::UpperBound, a).rejected());
    }

    #[test]
    fn json_field_names() {
        let a = SignificanceLevel::new(0.01).unwrap();
        let r = TestReport::new(2.0, 0.25, PValueKind::UpperBound, a);
        let v = serde_json::to_value(&r).unwrap();
        let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(
            keys,
            [
                "alpha",
                "components",
                "decision",
                "p_value",
                "p_value_kind",
                "statistic_bits"
            ]
        );
        assert_eq!(v["p_value_kind"], "upper_bound");
        assert_eq!(v["decision"], "accept");
    }
}
