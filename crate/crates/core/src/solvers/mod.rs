//! Newton and Picard iteration over formulation-H and traditional systems.

pub mod iterate;
pub mod lu;
pub mod options;
pub mod system;

pub use iterate::{newton, picard, solve};
pub use lu::{determinant, lu_solve, LuFactors};
pub use options::{JacobianMode, Method, SolveOptions, SolveReport, StopReason};
pub use system::ResidualSystem;
