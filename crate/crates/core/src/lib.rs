//! Weighted-residual discretisation of nonlinear ODEs in Hadamard-product
//! form ("formulation-H"), with closed-form Jacobians built from
//! Slice-Jacobian-Transpose (SJT) products.
//!
//! * [`hadamard`]: dense real matrices and vectors, Hadamard, Kronecker and
//!   SJT products, and numeric checks of their algebraic properties.
//! * [`formulation`]: residual expression trees, their evaluation and
//!   analytic Jacobians, plus a finite-difference oracle.
//! * [`assembly`]: bases, quadrature and weighting families producing the
//!   matrices of a formulation-H system, and the triple-product baseline.
//! * [`solvers`]: Newton and Picard iteration.
//! * [`problems`]: the benchmark problems and their exact solutions.

pub mod assembly;
pub mod error;
pub mod flops;
pub mod formulation;
pub mod hadamard;
pub mod problems;
pub mod solvers;

pub use error::{Error, Result, Shape};
pub use flops::Flops;
