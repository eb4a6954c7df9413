//! Single-degree-of-freedom pitch model of a bottom-hinged oscillating
//! surge flap with a linear spring-damper power take-off.

pub mod coeffs;
pub mod excitation;
pub mod irf;
pub mod objective;
pub mod pto;
pub mod sim;

pub use coeffs::{synthetic_coeffs_default, HydroCoeffs};
pub use excitation::{excitation_irregular, excitation_regular, pierson_moskowitz, IrregularSea, WaveSpec};
pub use irf::radiation_irf;
pub use objective::{default_space, Design, OswecModel};
pub use pto::{pto_force, pto_power, PtoParams};
pub use sim::{feasibility_check, simulate, BodyProps, Feasibility, SimConfig, SimResult, Summary};
pub use sim::DEFAULT_THETA_LIMIT_DEG;
