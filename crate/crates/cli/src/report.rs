//! Report assembly and the json, csv and text emitters.
//!
//! JSON and CSV output carry no timestamps or timings, so repeated runs of the
//! same config produce identical bytes. Timings only appear in text output.

use std::fmt::Write as _;
use std::time::Duration;

use abphase_core::scenarios::{Check, ScenarioResult, Verdict};
use abphase_core::PhaseContribution;
use serde::Serialize;

use crate::config::Config;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub config: Config,
    pub results: Vec<ResultEntry>,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultEntry {
    pub name: String,
    pub claim: String,
    pub phases: Vec<PhaseEntry>,
    pub total_difference_rad: f64,
    pub expected_rad: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseEntry {
    pub label: String,
    pub phase_rad: f64,
    pub expected_rad: Option<f64>,
    pub abs_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_estimate: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub breakdown: Vec<PhaseContribution>,
}

impl From<&ScenarioResult> for ResultEntry {
    fn from(r: &ScenarioResult) -> Self {
        Self {
            name: r.name.clone(),
            claim: r.claim.clone(),
            phases: r
                .phases
                .iter()
                .map(|p| PhaseEntry {
                    label: p.label.clone(),
                    phase_rad: p.radians(),
                    expected_rad: p.expected,
                    abs_error: p.expected.map(|e| (p.radians() - e).abs()),
                    error_estimate: p.phase.error_estimate(),
                    breakdown: if p.phase.breakdown().len() > 1 {
                        p.phase.breakdown().to_vec()
                    } else {
                        Vec::new()
                    },
                })
                .collect(),
            total_difference_rad: r.total_difference,
            expected_rad: r.expected,
            tolerance: r.tolerance_used,
            verdict: r.verdict,
            checks: r.checks.clone(),
            notes: r.notes.clone(),
        }
    }
}

impl Report {
    pub fn new(config: &Config, results: &[ScenarioResult]) -> Self {
        Self {
            config: config.clone(),
            results: results.iter().map(ResultEntry::from).collect(),
            version: VERSION.to_string(),
        }
    }

    pub fn all_reproduced(&self) -> bool {
        self.results.iter().all(|r| !r.verdict.is_failure())
    }

    pub fn failures(&self) -> impl Iterator<Item = &ResultEntry> {
        self.results.iter().filter(|r| r.verdict.is_failure())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per (scenario, phase label).
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["scenario", "label", "phase_rad", "expected_rad", "abs_error", "verdict"])
            .expect("in-memory write");
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.results {
            for p in &r.phases {
                w.write_record([
                    r.name.as_str(),
                    p.label.as_str(),
                    &p.phase_rad.to_string(),
                    &opt(p.expected_rad),
                    &opt(p.abs_error),
                    r.verdict.as_str(),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    /// Human-readable summary; timings are shown when given.
    pub fn to_text(&self, timings: Option<&[Duration]>) -> String {
        let mut s = String::new();
        for (i, r) in self.results.iter().enumerate() {
            let _ = writeln!(s, "[{}] {}", r.verdict.as_str().to_uppercase(), r.name);
            let _ = writeln!(s, "    claim: {}", r.claim);
            let shown = r.phases.len().min(12);
            for p in &r.phases[..shown] {
                let _ = match p.expected_rad {
                    Some(e) => writeln!(s, "    {:<40} {:>24.15e}  expected {:.15e}", p.label, p.phase_rad, e),
                    None => writeln!(s, "    {:<40} {:>24.15e}", p.label, p.phase_rad),
                };
            }
            if r.phases.len() > shown {
                let _ = writeln!(
                    s,
                    "    ... {} more phases in the json/csv report",
                    r.phases.len() - shown
                );
            }
            let _ = writeln!(
                s,
                "    total {:.15e} rad, expected {:.15e}, tolerance {:.3e}",
                r.total_difference_rad, r.expected_rad, r.tolerance
            );
            let failed: Vec<&Check> = r.checks.iter().filter(|c| !c.passed).collect();
            if r.checks.len() <= 4 {
                for c in &r.checks {
                    let mark = if c.passed { "ok" } else { "FAILED" };
                    let _ = writeln!(
                        s,
                        "    check {}: {:.15e} vs {:.15e} (tolerance {:.3e}) {mark}",
                        c.label, c.value, c.expected, c.tolerance
                    );
                }
            } else {
                let _ = writeln!(
                    s,
                    "    checks: {} of {} passed",
                    r.checks.len() - failed.len(),
                    r.checks.len()
                );
                for c in failed {
                    let _ = writeln!(
                        s,
                        "    check {} FAILED: {:.15e} vs {:.15e}",
                        c.label, c.value, c.expected
                    );
                }
            }
            for n in &r.notes {
                let _ = writeln!(s, "    note: {n}");
            }
            if let Some(t) = timings.and_then(|t| t.get(i)) {
                let _ = writeln!(s, "    time: {:.3} s", t.as_secs_f64());
            }
        }
        let failures: Vec<&str> = self.failures().map(|r| r.name.as_str()).collect();
        if failures.is_empty() {
            let _ = writeln!(s, "all {} scenario(s) reproduced", self.results.len());
        } else {
            let _ = writeln!(s, "{} scenario(s) violated: {}", failures.len(), failures.join(", "));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{ElectrostaticConfig, ScenarioConfig};
    use crate::run::run;

    fn small() -> Config {
        Config {
            scenarios: vec![
                ScenarioConfig::ElectrostaticAb(ElectrostaticConfig::default()),
                ScenarioConfig::ElectrostaticAb(ElectrostaticConfig {
                    volts_a: 2e-3,
                    volts_b: -1e-3,
                    ..ElectrostaticConfig::default()
                }),
            ],
            ..Config::reproduction_suite()
        }
    }

    #[test]
    fn json_has_contract_keys() {
        let report = run(&small()).unwrap().report;
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        for key in ["config", "results", "version"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let r = &v["results"][0];
        for key in ["name", "phases", "total_difference_rad", "verdict", "tolerance"] {
            assert!(r.get(key).is_some(), "{key}");
        }
        assert_eq!(r["verdict"], "reproduced");
    }

    #[test]
    fn csv_has_one_row_per_phase() {
        let report = run(&small()).unwrap().report;
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("scenario,label,phase_rad,expected_rad,abs_error,verdict")
        );
        let rows: Vec<&str> = lines.collect();
        let phases: usize = report.results.iter().map(|r| r.phases.len()).sum();
        assert_eq!(rows.len(), phases);
        assert!(rows[0].starts_with("electrostatic_ab,arm_a:particle,"));
        assert!(rows.iter().all(|r| r.ends_with(",reproduced")));
    }

    #[test]
    fn repeated_runs_are_byte_identical() {
        let a = run(&small()).unwrap().report;
        let b = run(&small()).unwrap().report;
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_csv(), b.to_csv());
    }

    #[test]
    fn text_names_the_failing_scenario() {
        let mut report = run(&small()).unwrap().report;
        report.results[1].verdict = Verdict::Violated;
        let text = report.to_text(None);
        assert!(text.contains("1 scenario(s) violated: electrostatic_ab"));
        assert!(!report.all_reproduced());
    }
}
