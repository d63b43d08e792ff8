//! Config-driven runner for the abphase reproduction scenarios.

pub mod config;
pub mod report;
pub mod run;

use std::path::Path;

use abphase_core::PhaseError;

pub use config::{parse_config, Config, ConfigError, ScenarioConfig};
pub use report::Report;
pub use run::{run, Outcome, RunError};

/// Process exit codes.
pub mod exit {
    pub const REPRODUCED: u8 = 0;
    pub const VIOLATED: u8 = 1;
    pub const CONFIG: u8 = 2;
    pub const NON_CONVERGENCE: u8 = 3;
}

/// Exit code for an engine error: quadrature failures are numerical, the rest
/// stem from the geometry or parameters in the config.
pub fn exit_code_for(err: &PhaseError) -> u8 {
    match err {
        PhaseError::NonConvergence { .. } => exit::NON_CONVERGENCE,
        _ => exit::CONFIG,
    }
}

/// Writes the json and csv reports requested by the config.
pub fn write_outputs(report: &Report, json: Option<&Path>, csv: Option<&Path>) -> std::io::Result<()> {
    if let Some(p) = json {
        std::fs::write(p, report.to_json())?;
    }
    if let Some(p) = csv {
        std::fs::write(p, report.to_csv())?;
    }
    Ok(())
}
