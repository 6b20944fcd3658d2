//! Treating a battery of tests as one test.
//!
//! If test `i` is run at level `alpha * omega_i` and `sum omega_i <= 1`, the
//! union bound keeps the battery's Type-I error at most `alpha`. Equivalently
//! the battery has p-value `min_i pi_i / omega_i`.

use super::report::{clamp_p_value, ComponentReport, PValueKind, TestReport};
use super::{SignificanceLevel, WeightSchedule};
use crate::error::{invalid, Result};

/// `min(1, min_i pi_i / omega_i)`, with weights assigned by position.
pub fn battery_p_value(component_p_values: &[f64], schedule: &WeightSchedule) -> Result<f64> {
    if component_p_values.is_empty() {
        return Err(invalid("a battery needs at least one component"));
    }
    let mut best = 1.0f64;
    for (i, &p) in component_p_values.iter().enumerate() {
        if !(p > 0.0 && p <= 1.0) {
            return Err(invalid(format!("component p-value {p} is not in (0, 1]")));
        }
        let w = schedule.weight(i as u64 + 1)?;
        if w > 0.0 {
            best = best.min(p / w);
        }
    }
    Ok(best)
}

/// Combines named component reports into one battery report. The component
/// order fixes the weights. The battery statistic is `log2(1/p)`.
pub fn combine(
    components: &[(String, TestReport)],
    schedule: &WeightSchedule,
    alpha: SignificanceLevel,
) -> Result<TestReport> {
    let ps: Vec<f64> = components.iter().map(|(_, r)| r.p_value).collect();
    let p = clamp_p_value(battery_p_value(&ps, schedule)?);
    let mut report = TestReport::new(-p.log2(), p, PValueKind::UpperBound, alpha);
    report.components = components
        .iter()
        .enumerate()
        .map(|(i, (id, r))| {
            Ok(ComponentReport {
                test_id: id.clone(),
                statistic_bits: r.statistic_bits,
                p_value: r.p_value,
                p_value_kind: r.p_value_kind,
                weight: schedule.weight(i as u64 + 1)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(report)
}
