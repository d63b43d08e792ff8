//! Configuration-space Aharonov–Bohm phases.
//!
//! The engine computes interference phases from the coupling of a particle
//! with its whole apparatus: energy phases, particle-side and apparatus-side
//! vector-potential phases, and the scenarios built from them.

pub mod constants;
pub mod error;
pub mod phase;
pub mod phase_value;
pub mod scenarios;
pub mod sources;
pub mod topology;
pub mod vec3;

pub use constants::SIConstants;
pub use error::{PhaseError, Result};
pub use phase_value::{PhaseContribution, PhaseValue};
pub use vec3::Vec3;
