//! Phase totals with a labelled per-contribution breakdown.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseContribution {
    pub label: String,
    pub radians: f64,
}

/// A phase in radians together with the contributions that sum to it.
///
/// The total is always the left-to-right sum of the breakdown, so the two
/// never disagree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseValue {
    radians: f64,
    breakdown: Vec<PhaseContribution>,
    /// Quadrature error estimate, when the value came from an adaptive rule.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    error_estimate: Option<f64>,
    /// Panels used by the adaptive rule.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    panels: Option<usize>,
}

impl PhaseValue {
    pub fn single(label: impl Into<String>, radians: f64) -> Self {
        Self::from_parts(vec![(label.into(), radians)])
    }

    pub fn zero(label: impl Into<String>) -> Self {
        Self::single(label, 0.0)
    }

    pub fn from_parts<L: Into<String>>(parts: impl IntoIterator<Item = (L, f64)>) -> Self {
        let breakdown: Vec<PhaseContribution> = parts
            .into_iter()
            .map(|(label, radians)| PhaseContribution {
                label: label.into(),
                radians,
            })
            .collect();
        let radians = breakdown.iter().fold(0.0, |acc, c| acc + c.radians);
        Self {
            radians,
            breakdown,
            error_estimate: None,
            panels: None,
        }
    }

    pub(crate) fn with_diagnostics(mut self, error_estimate: f64, panels: usize) -> Self {
        self.error_estimate = Some(error_estimate);
        self.panels = Some(panels);
        self
    }

    pub fn radians(&self) -> f64 {
        self.radians
    }

    pub fn breakdown(&self) -> &[PhaseContribution] {
        &self.breakdown
    }

    pub fn error_estimate(&self) -> Option<f64> {
        self.error_estimate
    }

    pub fn panels(&self) -> Option<usize> {
        self.panels
    }

    /// Concatenate breakdowns. Diagnostics combine as summed error and panels.
    pub fn combine(&self, other: &PhaseValue) -> PhaseValue {
        let mut out = PhaseValue::from_parts(
            self.breakdown
                .iter()
                .chain(other.breakdown.iter())
                .map(|c| (c.label.clone(), c.radians)),
        );
        if self.error_estimate.is_some() || other.error_estimate.is_some() {
            out.error_estimate = Some(self.error_estimate.unwrap_or(0.0) + other.error_estimate.unwrap_or(0.0));
            out.panels = Some(self.panels.unwrap_or(0) + other.panels.unwrap_or(0));
        }
        out
    }

    /// Same value under a new single label, keeping diagnostics.
    pub fn relabel(&self, label: impl Into<String>) -> PhaseValue {
        let mut out = PhaseValue::single(label, self.radians);
        out.error_estimate = self.error_estimate;
        out.panels = self.panels;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn breakdown_sums_to_total(parts in proptest::collection::vec(-1e3..1e3f64, 1..12)) {
            let p = PhaseValue::from_parts(parts.iter().enumerate().map(|(i, r)| (format!("c{i}"), *r)));
            let sum: f64 = p.breakdown().iter().map(|c| c.radians).sum();
            let scale = p.radians().abs().max(parts.iter().fold(0.0f64, |m, x| m.max(x.abs())));
            prop_assert!((sum - p.radians()).abs() <= 8.0 * f64::EPSILON * scale);
        }
    }

    #[test]
    fn combine_concatenates() {
        let a = PhaseValue::single("a", 1.0);
        let b = PhaseValue::single("b", -0.25);
        let c = a.combine(&b);
        assert_eq!(c.radians(), 0.75);
        assert_eq!(c.breakdown().len(), 2);
        assert_eq!(c.breakdown()[1].label, "b");
    }
}
