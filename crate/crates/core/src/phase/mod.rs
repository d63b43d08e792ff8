//! The phase engine.

pub mod apparatus;
pub mod energy;
pub mod linkage;
pub mod neutron;
pub mod particle;
pub mod quadrature;
pub mod reciprocity;

pub use apparatus::{phase_apparatus_side, MovingSource};
pub use energy::{phase_energy, EnergyProfile, Side};
pub use neutron::phase_neutron_integral;
pub use particle::{loop_line_integral, phase_particle_side};
pub use quadrature::{integrate, GaussRule, Integral, QuadratureConfig};
pub use reciprocity::{reciprocity_check, relative_gap, ReciprocityReport};
