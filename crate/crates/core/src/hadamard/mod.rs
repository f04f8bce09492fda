//! Dense matrix values and the Hadamard / SJT product algebra.

pub mod eigen;
pub mod func;
pub mod matrix;
pub mod products;
pub mod properties;

pub use eigen::symmetric_eigenvalues;
pub use func::{ElementwiseFn, FunctionRegistry};
pub use matrix::{RealMatrix, RealVector};
pub use products::{
    had_func, had_inverse, had_power, had_product, kron, selection_matrix, sjt_post,
    sjt_post_counted, sjt_pre, sjt_pre_counted,
};
