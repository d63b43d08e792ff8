//! The reproduction scenarios. Each returns a [`ScenarioResult`] whose verdict
//! states whether the computed phases match the claim being tested.

pub mod electrostatic;
pub mod magnetic;
pub mod neutron;
pub mod presets;
pub mod shield_paths;
pub mod wang;

use serde::{Deserialize, Serialize};

use crate::phase_value::PhaseValue;

pub use electrostatic::run_electrostatic_ab;
pub use magnetic::{run_magnetic_ab, MagneticAbSetup};
pub use neutron::{run_neutron_scalar, Arm, NeutronSetup};
pub use shield_paths::{run_particle_on_shield_path_independence, SymmetryClaim};
pub use wang::{run_wang_check, WangCheck};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Reproduced,
    Violated,
    /// A measurement with no claim attached.
    NotAsserted,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Reproduced => "reproduced",
            Verdict::Violated => "violated",
            Verdict::NotAsserted => "not_asserted",
        }
    }

    pub fn is_failure(&self) -> bool {
        *self == Verdict::Violated
    }
}

/// Acceptance thresholds used by the scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Absolute radians for claims of an exact zero.
    pub zero_absolute: f64,
    /// Relative tolerance for claims of equality.
    pub relative: f64,
    /// Relative tolerance for loop-discretized routes.
    pub discretized_relative: f64,
    /// Relative agreement between the two directions of a mutual phase.
    pub direction_relative: f64,
    /// Relative agreement of the particle-on-shield phases of two paths.
    pub path_relative: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            zero_absolute: 1e-8,
            relative: 1e-6,
            discretized_relative: 1e-3,
            direction_relative: 1e-9,
            path_relative: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledPhase {
    pub label: String,
    pub phase: PhaseValue,
    /// What this phase should equal, when the claim fixes it.
    pub expected: Option<f64>,
}

impl LabeledPhase {
    pub fn new(label: impl Into<String>, phase: PhaseValue, expected: Option<f64>) -> Self {
        Self {
            label: label.into(),
            phase,
            expected,
        }
    }

    pub fn radians(&self) -> f64 {
        self.phase.radians()
    }
}

/// A secondary comparison that must also hold for the claim to be reproduced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub value: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(label: impl Into<String>, value: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            label: label.into(),
            value,
            expected,
            tolerance,
            passed: (value - expected).abs() <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub name: String,
    pub claim: String,
    pub phases: Vec<LabeledPhase>,
    pub total_difference: f64,
    pub expected: f64,
    pub tolerance_used: f64,
    pub verdict: Verdict,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl ScenarioResult {
    /// Verdict is reproduced iff |total − expected| ≤ tolerance and every check passed.
    pub fn assess(
        name: impl Into<String>,
        claim: impl Into<String>,
        phases: Vec<LabeledPhase>,
        total_difference: f64,
        expected: f64,
        tolerance_used: f64,
        checks: Vec<Check>,
    ) -> Self {
        let primary = (total_difference - expected).abs() <= tolerance_used;
        let verdict = if primary && checks.iter().all(|c| c.passed) {
            Verdict::Reproduced
        } else {
            Verdict::Violated
        };
        Self {
            name: name.into(),
            claim: claim.into(),
            phases,
            total_difference,
            expected,
            tolerance_used,
            verdict,
            checks,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn phase(&self, label: &str) -> Option<&LabeledPhase> {
        self.phases.iter().find(|p| p.label == label)
    }

    /// Force the verdict to a measurement-only result.
    pub(crate) fn unasserted(mut self) -> Self {
        self.verdict = Verdict::NotAsserted;
        self
    }
}
