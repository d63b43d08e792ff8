//! Vector-potential sources: moving charges, dipoles, wires, solenoids, and
//! the ideal shield.

pub mod dipole;
pub mod kernels;
pub mod shield;
pub mod solenoid;
pub mod trajectory;
pub mod wire;

pub use dipole::{DipoleSource, DipoleTrajectory};
pub use kernels::{dipole_a, moving_charge_a, segment_a, DEFAULT_GUARD};
pub use shield::{induced_shield_current, EquivalentLoopCurrent, ShieldMode, ShieldSpec};
pub use solenoid::{solenoid_a_analytic, solenoid_a_loops, SolenoidSpec, DEFAULT_SEGMENTS_PER_TURN};
pub use trajectory::{ChargeTrajectory, PathSample, Trajectory};
pub use wire::{Circuit, Polyline, WireElement};
